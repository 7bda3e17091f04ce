#include "bihyp/padic.hpp"

#include <sstream>

namespace bihyp {

ZqRing::ZqRing(std::shared_ptr<const GF> gf, int precision) : gf_(std::move(gf)), n_(precision) {
    if (n_ < 1) throw domain_error("p-adic precision must be positive");
    mpz_ui_pow_ui(pn_.get_mpz_t(), static_cast<unsigned long>(gf_->p()),
                  static_cast<unsigned long>(n_));
    // Image of the residue generator under the Frobenius lift: the root of h
    // congruent to y^p. Built here so finished rings are safely shareable.
    std::vector<Elem> h;
    for (long long c : gf_->modulus()) {
        Elem e = zero();
        e[0] = cmod(mpz_class(static_cast<long>(c)));
        h.push_back(e);
    }
    Elem gy = lift_root(h, gf_->frobenius(gf_->gen()));
    frob_gen_pows_.assign(1, one());
    for (int j = 1; j < k(); ++j) frob_gen_pows_.push_back(mul(frob_gen_pows_.back(), gy));
}

mpz_class ZqRing::cmod(const mpz_class& a) const {
    mpz_class r = a % pn_;
    if (r < 0) r += pn_;
    return r;
}

ZqRing::Elem ZqRing::one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
}

ZqRing::Elem ZqRing::from_rat(const Rat& q) const {
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p())))
        throw domain_error("rational with p in the denominator is not p-integral");
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pn_.get_mpz_t()) == 0)
        throw domain_error("denominator not invertible mod p^N");
    Elem e = zero();
    e[0] = cmod(num * dinv);
    return e;
}

ZqRing::Elem ZqRing::embed(const GF::Elem& a) const {
    Elem e = zero();
    for (int i = 0; i < k(); ++i) e[static_cast<std::size_t>(i)] = static_cast<long>(a[static_cast<std::size_t>(i)]);
    return e;
}

bool ZqRing::is_zero(const Elem& a) const {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

ZqRing::Elem ZqRing::add(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < k(); ++i)
        r[static_cast<std::size_t>(i)] =
            cmod(a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]);
    return r;
}

ZqRing::Elem ZqRing::sub(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < k(); ++i)
        r[static_cast<std::size_t>(i)] =
            cmod(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]);
    return r;
}

ZqRing::Elem ZqRing::neg(const Elem& a) const { return sub(zero(), a); }

ZqRing::Elem ZqRing::mul(const Elem& a, const Elem& b) const {
    int kk = k();
    std::vector<mpz_class> t(static_cast<std::size_t>(2 * kk - 1), mpz_class(0));
    for (int i = 0; i < kk; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < kk; ++j)
            t[static_cast<std::size_t>(i + j)] +=
                a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    const auto& h = gf_->modulus(); // monic, integer coefficients in [0, p)
    for (int d = 2 * kk - 2; d >= kk; --d) {
        mpz_class c = t[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        t[static_cast<std::size_t>(d)] = 0;
        for (int i = 0; i < kk; ++i)
            t[static_cast<std::size_t>(d - kk + i)] -= c * static_cast<long>(h[static_cast<std::size_t>(i)]);
    }
    Elem r = zero();
    for (int i = 0; i < kk; ++i) r[static_cast<std::size_t>(i)] = cmod(t[static_cast<std::size_t>(i)]);
    return r;
}

ZqRing::Elem ZqRing::pow_small(Elem a, long long e) const {
    if (e < 0) throw domain_error("negative exponent in ring power");
    Elem r = one();
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

int ZqRing::valuation(const Elem& a) const {
    int best = n_;
    for (const auto& c : a) {
        if (c == 0) continue;
        mpz_class t = c;
        int v = 0;
        while (v < best && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p()))) {
            t /= static_cast<long>(p());
            ++v;
        }
        if (v < best) best = v;
        if (best == 0) break;
    }
    return best;
}

GF::Elem ZqRing::residue(const Elem& a) const {
    GF::Elem r = gf_->zero();
    for (int i = 0; i < k(); ++i) {
        mpz_class t = a[static_cast<std::size_t>(i)] % static_cast<long>(p());
        r[static_cast<std::size_t>(i)] = t.get_si();
    }
    return r;
}

ZqRing::Elem ZqRing::divide_exact_p(const Elem& a, int v) const {
    if (v == 0) return a;
    if (valuation(a) < v) throw domain_error("inexact division by p^v");
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p()), static_cast<unsigned long>(v));
    Elem r = zero();
    for (int i = 0; i < k(); ++i) r[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] / pv;
    return r;
}

ZqRing::Elem ZqRing::inv_unit(const Elem& a) const {
    if (valuation(a) != 0) throw domain_error("inversion of a non-unit");
    // Newton: z <- z(2 - a z), starting from the residue inverse.
    Elem z = embed(gf_->inv(residue(a)));
    int prec = 1;
    while (prec < n_) {
        Elem t = sub(add(one(), one()), mul(a, z));
        z = mul(z, t);
        prec *= 2;
    }
    return z;
}

ZqRing::Elem ZqRing::eval(const std::vector<Elem>& f, const Elem& x) const {
    Elem r = zero();
    for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, x), f[i]);
    return r;
}

ZqRing::Elem ZqRing::lift_root(const std::vector<Elem>& f, const GF::Elem& start) const {
    std::vector<Elem> df;
    for (std::size_t i = 1; i < f.size(); ++i) {
        Elem c = zero();
        for (std::size_t j = 0; j < i; ++j) c = add(c, f[i]); // i * f[i]
        df.push_back(c);
    }
    Elem x = embed(start);
    // check the root is simple
    if (gf_->is_zero(residue(eval(df, x))))
        throw domain_error("inseparable reduction: residue root is not simple");
    if (!gf_->is_zero(residue(eval(f, x))))
        throw domain_error("internal: starting value is not a residue root");
    int steps = 1;
    for (int prec = 1; prec < n_; prec *= 2) ++steps;
    for (int i = 0; i < steps + 1; ++i) {
        Elem fx = eval(f, x);
        if (is_zero(fx)) break;
        Elem corr = mul(fx, inv_unit(eval(df, x)));
        x = sub(x, corr);
    }
    if (!is_zero(eval(f, x))) throw domain_error("internal: Newton lift did not converge");
    return x;
}

ZqRing::Elem ZqRing::frobenius(const Elem& a) const {
    Elem r = zero();
    for (int j = 0; j < k(); ++j) {
        Elem t = frob_gen_pows_[static_cast<std::size_t>(j)];
        for (auto& c : t) c = cmod(c * a[static_cast<std::size_t>(j)]);
        r = add(r, t);
    }
    return r;
}

std::string ZqRing::str(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < k(); ++i) os << (i ? "," : "") << a[static_cast<std::size_t>(i)].get_str();
    os << "] mod " << p() << "^" << n_;
    return os.str();
}

std::vector<GF::Elem> PAdic::digits() const {
    std::vector<GF::Elem> out;
    const ZqRing& R = *ring_;
    ZqRing::Elem rest = v_;
    for (int i = 0; i < R.precision(); ++i) {
        GF::Elem d = R.residue(rest);
        out.push_back(d);
        rest = R.sub(rest, R.embed(d));
        rest = R.divide_exact_p(rest, 1);
    }
    return out;
}

} // namespace bihyp
