#include "bihyp/arithmetic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace bihyp {

bool is_odd_prime(long long p) {
    if (p < 3 || p % 2 == 0) return false;
    if (p > 2000000011LL) throw domain_error("primes above 2*10^9 are not supported");
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

long long vp_of_rat(const Rat& q, long long p) {
    if (q == 0) throw domain_error("valuation of zero");
    long long v = 0;
    mpz_class t = q.get_num();
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        t /= static_cast<long>(p);
        ++v;
    }
    t = q.get_den();
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        t /= static_cast<long>(p);
        --v;
    }
    return v;
}

namespace {

// q / p^{v_p(q)} reduced mod p, as an element of F_p
long long unit_residue_mod_p(const Rat& q, long long p) {
    mpz_class num = q.get_num(), den = q.get_den();
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) num /= static_cast<long>(p);
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) den /= static_cast<long>(p);
    mpz_class pm(static_cast<long>(p));
    mpz_class n = num % pm, d = den % pm;
    long long nn = fp_mod(n.get_si(), p), dd = fp_mod(d.get_si(), p);
    return fp_mul(nn, fp_inv(dd, p), p);
}

} // namespace

int legendre(const Rat& u, long long p) {
    if (!is_odd_prime(p)) throw domain_error("legendre: p must be an odd prime");
    if (u == 0 || vp_of_rat(u, p) != 0)
        throw domain_error("legendre: argument must be a unit at p");
    long long a = unit_residue_mod_p(u, p);
    long long t = fp_pow(a, (p - 1) / 2, p);
    return t == 1 ? 1 : -1;
}

long long ArithContext::val_diff(int i, int j) const {
    if (i == j) throw domain_error("valuation of a root minus itself");
    return valmat_.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

int ArithContext::leaf_root(const Picture& pic, int leaf_id) const {
    // leaves were tagged with their root index at construction
    for (int r = 0; r < root_count(); ++r)
        if (pic.id_of_tag(r) == leaf_id) return r;
    throw domain_error("cluster is not a leaf of this picture");
}

int ArithContext::center_root(const Picture& pic, int cluster) const {
    int best = -1;
    for (int leaf : pic.leaves_of(cluster)) {
        for (int r = 0; r < root_count(); ++r)
            if (pic.id_of_tag(r) == leaf && (best < 0 || r < best)) best = r;
    }
    if (best < 0) throw domain_error("cluster has no roots");
    return best;
}

const Rat& ArithContext::lead(Pidx idx) const {
    switch (idx) {
    case Pidx::red: return lead1_;
    case Pidx::blue: return lead2_;
    default: return lead_h_;
    }
}

Rat ArithContext::nu_disc(const Picture& pic, int cluster, Pidx idx) const {
    Rat nu = to_rat(vp_of_rat(lead(idx), p_));
    const Rat& d = pic.cluster(cluster).depth;
    int zc = center_root(pic, cluster);
    std::vector<char> inside(static_cast<std::size_t>(root_count()), 0);
    for (int leaf : pic.leaves_of(cluster)) inside[static_cast<std::size_t>(leaf_root(pic, leaf))] = 1;
    for (int r = 0; r < root_count(); ++r) {
        bool relevant = idx == Pidx::comp || (idx == Pidx::red && colors_[static_cast<std::size_t>(r)] == LeafColor::red) ||
                        (idx == Pidx::blue && colors_[static_cast<std::size_t>(r)] == LeafColor::blue);
        if (!relevant) continue;
        if (inside[static_cast<std::size_t>(r)])
            nu += d; // v(z - r) >= d inside the disc
        else
            nu += to_rat(val_diff(zc, r));
    }
    return nu;
}

int ArithContext::omega_disc(const Picture& pic, int cluster, Pidx idx) const {
    Rat nu = nu_disc(pic, cluster, idx);
    if (!is_integer(nu))
        throw domain_error("nu is not an integer; no parity is defined");
    mpz_class m = nu.get_num() % 2;
    return m == 0 ? 0 : 1;
}

long long ArithContext::theta_sq_valuation(const Picture& pic, int cluster, Pidx idx) const {
    int t = star_in(pic, cluster, idx);
    int zc = center_root(pic, t);
    long long v = vp_of_rat(lead(idx), p_);
    std::vector<char> inside(static_cast<std::size_t>(root_count()), 0);
    for (int leaf : pic.leaves_of(t)) inside[static_cast<std::size_t>(leaf_root(pic, leaf))] = 1;
    for (int r = 0; r < root_count(); ++r) {
        bool relevant = idx == Pidx::comp || (idx == Pidx::red && colors_[static_cast<std::size_t>(r)] == LeafColor::red) ||
                        (idx == Pidx::blue && colors_[static_cast<std::size_t>(r)] == LeafColor::blue);
        if (!relevant || inside[static_cast<std::size_t>(r)]) continue;
        v += val_diff(zc, r);
    }
    return v;
}

std::optional<int> ArithContext::epsilon(const Picture& pic, const Classification& cls, int cluster,
                                         Pidx idx) const {
    if (!even_in(pic, cluster, idx) && !cls.info(cluster).cotwin)
        throw domain_error("epsilon needs a cluster that is even, empty or a cotwin in the picture");
    long long v = theta_sq_valuation(pic, cluster, idx);
    if (v % 2 != 0) return std::nullopt;

    int t = star_in(pic, cluster, idx);
    int zc = center_root(pic, t);
    const GF& gf = ring_->residue_field();
    GF::Elem rho = gf.from_int(unit_residue_mod_p(lead(idx), p_));
    std::vector<char> inside(static_cast<std::size_t>(root_count()), 0);
    for (int leaf : pic.leaves_of(t)) inside[static_cast<std::size_t>(leaf_root(pic, leaf))] = 1;
    for (int r = 0; r < root_count(); ++r) {
        bool relevant = idx == Pidx::comp || (idx == Pidx::red && colors_[static_cast<std::size_t>(r)] == LeafColor::red) ||
                        (idx == Pidx::blue && colors_[static_cast<std::size_t>(r)] == LeafColor::blue);
        if (!relevant || inside[static_cast<std::size_t>(r)]) continue;
        PAdic diff = roots_[static_cast<std::size_t>(zc)] - roots_[static_cast<std::size_t>(r)];
        rho = gf.mul(rho, ring_->unit_residue(diff.raw(), static_cast<int>(val_diff(zc, r))));
    }
    return gf.square_sign(rho);
}

std::vector<int> ArithContext::root_frobenius() const {
    const GF& gf = ring_->residue_field();
    std::vector<int> perm(static_cast<std::size_t>(root_count()), -1);
    for (int i = 0; i < root_count(); ++i) {
        GF::Elem img = gf.frobenius(unit_residues_[static_cast<std::size_t>(i)]);
        for (int j = 0; j < root_count(); ++j) {
            if (descriptor_of_[static_cast<std::size_t>(j)] != descriptor_of_[static_cast<std::size_t>(i)])
                continue;
            if (gf.equal(unit_residues_[static_cast<std::size_t>(j)], img)) {
                perm[static_cast<std::size_t>(i)] = j;
                break;
            }
        }
        if (perm[static_cast<std::size_t>(i)] < 0)
            throw domain_error("internal: Frobenius image of a root is not among the roots");
    }
    // must be a bijection
    std::vector<int> seen(perm.size(), 0);
    for (int v : perm) seen[static_cast<std::size_t>(v)]++;
    for (int s : seen)
        if (s != 1) throw domain_error("internal: root Frobenius is not a permutation");
    return perm;
}

std::vector<int> ArithContext::cluster_frobenius(const Picture& pic) const {
    std::vector<int> rperm = root_frobenius();
    std::map<std::vector<int>, int> by_roots;
    auto roots_of = [&](int id) {
        std::vector<int> rs;
        for (int leaf : pic.leaves_of(id)) rs.push_back(leaf_root(pic, leaf));
        std::sort(rs.begin(), rs.end());
        return rs;
    };
    for (int id = 0; id < pic.node_count(); ++id) by_roots[roots_of(id)] = id;
    std::vector<int> perm(static_cast<std::size_t>(pic.node_count()), -1);
    for (int id = 0; id < pic.node_count(); ++id) {
        std::vector<int> img;
        for (int leaf : pic.leaves_of(id)) img.push_back(rperm[static_cast<std::size_t>(leaf_root(pic, leaf))]);
        std::sort(img.begin(), img.end());
        auto it = by_roots.find(img);
        if (it == by_roots.end())
            throw domain_error("internal: Frobenius does not map clusters to clusters");
        perm[static_cast<std::size_t>(id)] = it->second;
    }
    return perm;
}

namespace {

// (x - z)^n - c expanded over Q, lowest degree first
std::vector<Rat> descriptor_poly(const RootDescriptor& d) {
    std::vector<Rat> f(static_cast<std::size_t>(d.n) + 1, Rat(0));
    Rat binom = 1;
    for (int j = d.n; j >= 0; --j) {
        // coefficient of x^j is C(n, j) (-z)^{n-j}
        Rat term = binom;
        for (int t = 0; t < d.n - j; ++t) term *= -d.z;
        f[static_cast<std::size_t>(j)] = term;
        // next: C(n, j-1) = C(n, j) * j / (n - j + 1)
        if (j > 0) binom = binom * j / (d.n - j + 1);
    }
    f[0] -= d.c;
    return f;
}

std::vector<Rat> poly_mod_q(std::vector<Rat> a, std::vector<Rat> b) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!b.empty() && b.back() == 0) b.pop_back();
    while (a.size() >= b.size() && !b.empty()) {
        Rat c = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

bool coprime_over_q(const std::vector<Rat>& f, const std::vector<Rat>& g) {
    std::vector<Rat> a = f, b = g;
    while (!b.empty()) {
        std::vector<Rat> r = poly_mod_q(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.size() == 1; // nonzero constant gcd
}

struct LiftedDescriptor {
    long long m = 0;             // v_p(c)/n
    std::vector<GF::Elem> wbar;  // residue radical parts, sorted
};

} // namespace

struct ContextBuilder {
    static ArithResult run(const PolynomialInput& in) {
        const long long p = in.p;
        if (!is_odd_prime(p)) throw domain_error("p must be an odd prime");
        if (in.red.empty() || in.blue.empty())
            throw domain_error("both polynomials need at least one factor");
        if (in.lead1 == 0 || in.lead2 == 0) throw domain_error("leading coefficients must be nonzero");

        std::vector<RootDescriptor> all = in.red;
        all.insert(all.end(), in.blue.begin(), in.blue.end());

        for (std::size_t i = 0; i < all.size(); ++i) {
            const RootDescriptor& d = all[i];
            if (d.n < 1) throw domain_error("descriptor index n must be positive");
            if (d.c == 0) throw domain_error("descriptor radicand must be nonzero");
            if (d.n % p == 0)
                throw domain_error("wild case p | n is unsupported (descriptor " +
                                   std::to_string(i) + ")");
            if (vp_of_rat(d.z == 0 ? Rat(1) : d.z, p) < 0)
                throw domain_error("shift z has p in the denominator (descriptor " +
                                   std::to_string(i) + ")");
            long long v = vp_of_rat(d.c, p);
            if (v < 0)
                throw domain_error("negative-valuation roots are unsupported; substitute "
                                   "x -> p^e x first (descriptor " + std::to_string(i) + ")");
            if (v % d.n != 0)
                throw domain_error("n must divide v_p(c) so root valuations are integers "
                                   "(descriptor " + std::to_string(i) + ")");
        }

        // exact coprimality of every pair of factors
        std::vector<std::vector<Rat>> polys;
        for (const auto& d : all) polys.push_back(descriptor_poly(d));
        for (std::size_t i = 0; i < polys.size(); ++i)
            for (std::size_t j = i + 1; j < polys.size(); ++j)
                if (!coprime_over_q(polys[i], polys[j]))
                    throw domain_error("shared roots detected between descriptors " +
                                       std::to_string(i) + " and " + std::to_string(j));

        // common splitting field
        int K = 1;
        for (const auto& d : all) {
            long long ubar = unit_residue_mod_p(d.c, p);
            int kd = splitting_degree(p, d.n, ubar);
            K = static_cast<int>(std::lcm(K, kd));
            if (K > 30) throw domain_error("combined splitting degree exceeds the supported bound");
        }
        auto gf = std::make_shared<const GF>(p, K);

        long long maxm = 0;
        for (const auto& d : all) maxm = std::max(maxm, vp_of_rat(d.c, p) / d.n);

        int N = static_cast<int>(2 * maxm + 4);
        std::shared_ptr<const ZqRing> ring;
        std::vector<PAdic> roots;
        std::vector<GF::Elem> unit_residues;
        std::vector<int> desc_of;
        std::vector<LeafColor> colors;
        std::vector<std::vector<long long>> valmat;

        for (int round = 0;; ++round) {
            if (round > 6) {
                // report the first undistinguished pair
                std::string msg = "roots indistinguishable at maximal precision";
                for (std::size_t i = 0; i < valmat.size(); ++i)
                    for (std::size_t j = i + 1; j < valmat.size(); ++j)
                        if (valmat[i][j] >= N) {
                            msg += ": roots " + std::to_string(i) + " and " + std::to_string(j) +
                                   " (descriptors " + std::to_string(desc_of[i]) + ", " +
                                   std::to_string(desc_of[j]) + ")";
                            throw domain_error(msg);
                        }
                throw domain_error(msg);
            }
            ring = std::make_shared<const ZqRing>(gf, 2 * N);
            roots.clear();
            unit_residues.clear();
            desc_of.clear();
            colors.clear();

            for (std::size_t di = 0; di < all.size(); ++di) {
                const RootDescriptor& d = all[di];
                long long v = vp_of_rat(d.c, p);
                long long m = v / d.n;
                Rat unit = d.c;
                for (long long t = 0; t < v; ++t) unit /= static_cast<long>(p);
                GF::Elem ubar = gf->from_int(unit_residue_mod_p(unit, p));
                std::vector<GF::Elem> wbars = gf->nth_roots(d.n, ubar);
                if (static_cast<int>(wbars.size()) != d.n)
                    throw domain_error("internal: expected " + std::to_string(d.n) +
                                       " residue roots, found " + std::to_string(wbars.size()));
                // f(W) = W^n - unit over the ring
                std::vector<ZqRing::Elem> f(static_cast<std::size_t>(d.n) + 1, ring->zero());
                f[0] = ring->neg(ring->from_rat(unit));
                f[static_cast<std::size_t>(d.n)] = ring->one();
                mpz_class pm;
                mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p),
                              static_cast<unsigned long>(m));
                for (const GF::Elem& wb : wbars) {
                    ZqRing::Elem w = ring->lift_root(f, wb);
                    // r = z + w p^m
                    ZqRing::Elem r = ring->from_rat(d.z);
                    ZqRing::Elem scaled = w;
                    for (auto& cc : scaled) cc = (cc * pm) % ring->pN();
                    r = ring->add(r, scaled);
                    roots.emplace_back(ring, r);
                    unit_residues.push_back(wb);
                    desc_of.push_back(static_cast<int>(di));
                    colors.push_back(d.color);
                }
            }

            // pairwise valuations, certified below the working precision
            std::size_t nr = roots.size();
            valmat.assign(nr, std::vector<long long>(nr, -1));
            bool certified = true;
            for (std::size_t i = 0; i < nr; ++i)
                for (std::size_t j = i + 1; j < nr; ++j) {
                    PAdic diff = roots[i] - roots[j];
                    int v = diff.valuation();
                    valmat[i][j] = valmat[j][i] = v;
                    if (v >= N) certified = false;
                }
            if (certified) break;
            N *= 2;
        }

        // cluster tree: children of a cluster are the classes of the
        // relation v(r, r') > depth
        struct RawCluster {
            std::vector<int> roots;
            long long depth = 0;
        };
        auto min_pair_val = [&](const std::vector<int>& rs) {
            long long d = valmat[static_cast<std::size_t>(rs[0])][static_cast<std::size_t>(rs[1])];
            for (std::size_t i = 0; i < rs.size(); ++i)
                for (std::size_t j = i + 1; j < rs.size(); ++j)
                    d = std::min(d, valmat[static_cast<std::size_t>(rs[i])][static_cast<std::size_t>(rs[j])]);
            return d;
        };

        std::function<Picture::Node(const std::vector<int>&, long long)> assemble =
            [&](const std::vector<int>& rs, long long parent_depth) -> Picture::Node {
            Picture::Node node;
            if (rs.size() == 1) {
                node.color = colors[static_cast<std::size_t>(rs[0])];
                node.tag = rs[0];
                return node;
            }
            long long d = min_pair_val(rs);
            node.rel_depth = to_rat(d - parent_depth);
            // partition by v > d (transitive by the ultrametric inequality)
            std::vector<int> cls_of(rs.size(), -1);
            int nc = 0;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                if (cls_of[i] >= 0) continue;
                cls_of[i] = nc;
                for (std::size_t j = i + 1; j < rs.size(); ++j)
                    if (cls_of[j] < 0 &&
                        valmat[static_cast<std::size_t>(rs[i])][static_cast<std::size_t>(rs[j])] > d)
                        cls_of[j] = nc;
                ++nc;
            }
            for (int cno = 0; cno < nc; ++cno) {
                std::vector<int> sub;
                for (std::size_t i = 0; i < rs.size(); ++i)
                    if (cls_of[i] == cno) sub.push_back(rs[i]);
                node.children.push_back(assemble(sub, d));
            }
            return node;
        };

        std::vector<int> all_roots(roots.size());
        std::iota(all_roots.begin(), all_roots.end(), 0);
        long long top = min_pair_val(all_roots);
        Picture::Node root_node = assemble(all_roots, top);
        Picture pic(root_node, to_rat(top), p);

        ArithContext ctx;
        ctx.p_ = p;
        ctx.ring_ = ring;
        ctx.roots_ = std::move(roots);
        ctx.unit_residues_ = std::move(unit_residues);
        ctx.descriptor_of_ = std::move(desc_of);
        ctx.colors_ = std::move(colors);
        ctx.valmat_ = std::move(valmat);
        ctx.lead1_ = in.lead1;
        ctx.lead2_ = in.lead2;
        ctx.lead_h_ = in.lead1 * in.lead2;
        return {std::move(pic), std::move(ctx)};
    }
};

ArithResult build_picture_from_polynomials(const PolynomialInput& in) {
    return ContextBuilder::run(in);
}

} // namespace bihyp
