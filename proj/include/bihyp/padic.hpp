#pragma once

#include <memory>
#include <vector>

#include "bihyp/gf.hpp"
#include "bihyp/rational.hpp"

namespace bihyp {

// The unramified extension of Z_p with residue field F_{p^k}, truncated at
// precision N: Z/p^N[y]/(h) with h the residue field's modulus lifted with
// coefficients in [0, p). Elements are coefficient vectors of length k over
// Z/p^N. Exact modulo p^N.
class ZqRing {
public:
    using Elem = std::vector<mpz_class>;

    ZqRing(std::shared_ptr<const GF> gf, int precision);

    const GF& residue_field() const { return *gf_; }
    std::shared_ptr<const GF> residue_field_ptr() const { return gf_; }
    long long p() const { return gf_->p(); }
    int k() const { return gf_->k(); }
    int precision() const { return n_; }
    const mpz_class& pN() const { return pn_; }

    Elem zero() const { return Elem(static_cast<std::size_t>(k()), 0); }
    Elem one() const;
    Elem from_rat(const Rat& q) const; // requires v_p(denominator) = 0
    Elem embed(const GF::Elem& a) const;

    bool is_zero(const Elem& a) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow_small(Elem a, long long e) const;

    // min_j v_p(coefficient j); N when the element vanishes mod p^N.
    int valuation(const Elem& a) const;
    GF::Elem residue(const Elem& a) const;
    Elem divide_exact_p(const Elem& a, int v) const; // a / p^v, requires valuation >= v
    GF::Elem unit_residue(const Elem& a, int v) const { return residue(divide_exact_p(a, v)); }

    Elem inv_unit(const Elem& a) const; // valuation 0 required

    // Newton lift of a simple residue root of f (coefficients in this ring).
    Elem lift_root(const std::vector<Elem>& f, const GF::Elem& start) const;
    Elem eval(const std::vector<Elem>& f, const Elem& x) const;

    // Ring lift of the residue Frobenius x -> x^p.
    Elem frobenius(const Elem& a) const;

    std::string str(const Elem& a) const;

private:
    std::shared_ptr<const GF> gf_;
    int n_;
    mpz_class pn_;
    std::vector<Elem> frob_gen_pows_; // Frobenius images of y^j, built at construction

    mpz_class cmod(const mpz_class& a) const;
};

// An exact element of the truncated unramified extension. The public view
// required of it: residue degree, precision, the base-p digit vector over
// F_{p^k}, valuation, ring arithmetic, Frobenius.
class PAdic {
public:
    PAdic() = default;
    PAdic(std::shared_ptr<const ZqRing> ring, ZqRing::Elem v)
        : ring_(std::move(ring)), v_(std::move(v)) {}

    const ZqRing& ring() const { return *ring_; }
    int residue_degree() const { return ring_->k(); }
    int precision() const { return ring_->precision(); }
    const ZqRing::Elem& raw() const { return v_; }

    int valuation() const { return ring_->valuation(v_); }
    bool indistinguishable_from_zero() const { return valuation() >= precision(); }

    // digit i is the residue of the i-th base-p coefficient layer
    std::vector<GF::Elem> digits() const;

    PAdic operator+(const PAdic& o) const { return {ring_, ring_->add(v_, o.v_)}; }
    PAdic operator-(const PAdic& o) const { return {ring_, ring_->sub(v_, o.v_)}; }
    PAdic operator*(const PAdic& o) const { return {ring_, ring_->mul(v_, o.v_)}; }
    PAdic operator-() const { return {ring_, ring_->neg(v_)}; }
    bool operator==(const PAdic& o) const { return v_ == o.v_; }

    PAdic frobenius() const { return {ring_, ring_->frobenius(v_)}; }
    GF::Elem unit_residue() const { return ring_->unit_residue(v_, valuation()); }

    std::string str() const { return ring_->str(v_); }

private:
    std::shared_ptr<const ZqRing> ring_;
    ZqRing::Elem v_;
};

} // namespace bihyp
