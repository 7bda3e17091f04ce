#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bihyp/errors.hpp"

namespace bihyp {

// F_{p^k} represented as F_p[y]/(h) with h monic irreducible of degree k,
// found deterministically. Elements are coefficient vectors of length k.
// Word-sized p; products go through __int128.
class GF {
public:
    using Elem = std::vector<long long>;

    GF(long long p, int k);

    long long p() const { return p_; }
    int k() const { return k_; }
    const std::vector<long long>& modulus() const { return h_; }
    mpz_class q() const { return q_; }

    Elem zero() const { return Elem(static_cast<std::size_t>(k_), 0); }
    Elem one() const;
    Elem from_int(long long a) const;  // embeds a mod p
    Elem gen() const;                  // the class of y

    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const { return a == b; }

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, const mpz_class& e) const;
    Elem inv(const Elem& a) const;
    Elem frobenius(const Elem& a) const { return pow(a, mpz_class(static_cast<long>(p_))); }

    // Degree of F_p(a) over F_p: the smallest divisor d of k with a^{p^d} = a.
    int subfield_degree(const Elem& a) const;

    // +1 iff a is a nonzero square in the minimal subfield containing it.
    int square_sign(const Elem& a) const;

    // All x in F_{p^k} with x^n = u, sorted canonically. The caller picks k
    // large enough that all n roots live here; counts are asserted.
    std::vector<Elem> nth_roots(int n, const Elem& u) const;

    static bool less(const Elem& a, const Elem& b);
    std::string str(const Elem& a) const;

private:
    long long p_;
    int k_;
    std::vector<long long> h_; // length k+1, monic
    mpz_class q_;

    // dense polynomials over this field, lowest degree first
    using Poly = std::vector<Elem>;
    Poly poly_trim(Poly f) const;
    Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const;
    Poly poly_powmod(Poly base, mpz_class e, const Poly& m) const;
    Poly poly_gcd(Poly a, Poly b) const;
    void split_roots(const Poly& f, std::vector<Elem>& out, unsigned long long& rng) const;
};

// mod-p arithmetic helpers shared with the arithmetic module
long long fp_mod(long long a, long long p);
long long fp_mul(long long a, long long b, long long p);
long long fp_pow(long long a, long long e, long long p);
long long fp_inv(long long a, long long p);

// Smallest m such that X^n - ubar splits completely over F_{p^m}
// (requires n | p^m - 1 and ubar an n-th power there). Throws past a cap.
int splitting_degree(long long p, int n, long long ubar);

} // namespace bihyp
