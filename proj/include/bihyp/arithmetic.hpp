#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "bihyp/classify.hpp"
#include "bihyp/padic.hpp"
#include "bihyp/picture.hpp"

namespace bihyp {

// One radical factor (x - z)^n = c of f1 or f2. Requires p coprime to n and
// to the denominators involved, and n | v_p(c) with v_p(c) >= 0, so all n
// roots z + w p^{v/n} have integral valuation.
struct RootDescriptor {
    Rat z = 0;
    Rat c = 1;
    int n = 1;
    LeafColor color = LeafColor::red;
};

struct PolynomialInput {
    long long p = 0;
    Rat lead1 = 1, lead2 = 1;
    std::vector<RootDescriptor> red;  // factors of f1
    std::vector<RootDescriptor> blue; // factors of f2
};

// +1 iff u reduces to a nonzero square mod p. Requires v_p(u) = 0 and p an
// odd prime.
int legendre(const Rat& u, long long p);

long long vp_of_rat(const Rat& q, long long p); // v_p, q != 0
bool is_odd_prime(long long p);

// Everything the p-adic side knows about a built picture: the lifted roots,
// their pairwise valuations, per-cluster centers, and the leading
// coefficients. Immutable once built.
class ArithContext {
public:
    long long prime() const { return p_; }
    int precision() const { return ring_->precision(); }
    int field_degree() const { return ring_->k(); }
    const ZqRing& ring() const { return *ring_; }

    int root_count() const { return static_cast<int>(roots_.size()); }
    const PAdic& root(int i) const { return roots_.at(static_cast<std::size_t>(i)); }
    LeafColor root_color(int i) const { return colors_.at(static_cast<std::size_t>(i)); }

    long long val_diff(int i, int j) const; // v(r_i - r_j), i != j
    int leaf_root(const Picture& pic, int leaf_id) const;
    int center_root(const Picture& pic, int cluster) const; // smallest root index inside

    const Rat& lead(Pidx idx) const;

    // nu_D(f_idx) = v(c_f) + sum over roots of min(d_D, v(z_D - r)).
    Rat nu_disc(const Picture& pic, int cluster, Pidx idx) const;
    int omega_disc(const Picture& pic, int cluster, Pidx idx) const;

    // v(theta^2) for the cluster's star in the given picture, plus the sign
    // of the unit residue. Used by epsilon and by the valuation identity.
    long long theta_sq_valuation(const Picture& pic, int cluster, Pidx idx) const;

    // The epsilon character evaluated at Frobenius: +1/-1, or nullopt when
    // v(theta^2) is odd. Throws unless the cluster is even or a cotwin (or
    // an empty disc) in the given picture.
    std::optional<int> epsilon(const Picture& pic, const Classification& cls, int cluster,
                               Pidx idx) const;

    std::vector<int> root_frobenius() const; // permutation of root indices
    // Induced permutation of picture nodes; throws if the root permutation
    // does not map clusters to clusters.
    std::vector<int> cluster_frobenius(const Picture& pic) const;

private:
    friend struct ContextBuilder;
    long long p_ = 0;
    std::shared_ptr<const ZqRing> ring_;
    std::vector<PAdic> roots_;
    std::vector<GF::Elem> unit_residues_; // residue of the radical part w of each root
    std::vector<int> descriptor_of_;
    std::vector<LeafColor> colors_;
    std::vector<std::vector<long long>> valmat_;
    Rat lead1_ = 1, lead2_ = 1, lead_h_ = 1;
};

struct ArithResult {
    Picture picture;
    ArithContext context;
};

// Computes all roots to a certified precision, clusters them by pairwise
// valuation, and assembles the chromatic cluster picture plus context.
ArithResult build_picture_from_polynomials(const PolynomialInput& in);

} // namespace bihyp
