#include "bihyp/gf.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace bihyp {

long long fp_mod(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long fp_mul(long long a, long long b, long long p) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
}

long long fp_pow(long long a, long long e, long long p) {
    long long r = 1;
    a = fp_mod(a, p);
    while (e > 0) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

long long fp_inv(long long a, long long p) {
    a = fp_mod(a, p);
    if (a == 0) throw domain_error("division by zero mod p");
    return fp_pow(a, p - 2, p);
}

namespace {

// deterministic generator for the probabilistic splitting steps
unsigned long long next_rng(unsigned long long& s) {
    s += 0x9e3779b97f4a7c15ULL;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

GF::GF(long long p, int k) : p_(p), k_(k) {
    if (p < 3 || k < 1) throw domain_error("finite field needs an odd prime and degree >= 1");
    mpz_ui_pow_ui(q_.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));

    if (k == 1) {
        h_ = {0, 1}; // y
        return;
    }

    // Scan candidates deterministically; irreducibles have density ~1/k.
    auto irreducible = [&](const std::vector<long long>& h) {
        Poly m;
        m.reserve(h.size());
        for (long long c : h) m.push_back(from_int(c));
        Poly y = {zero(), one()};
        // y^(p^k) == y mod h
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k_));
        Poly t = poly_powmod(y, e, m);
        Poly diff = poly_trim([&] {
            Poly d = t;
            if (d.size() < 2) d.resize(2, zero());
            d[1] = sub(d[1], one());
            return d;
        }());
        if (!diff.empty()) return false;
        // gcd(y^(p^(k/l)) - y, h) == 1 for every prime l | k
        std::vector<int> prime_divisors;
        int kk = k_;
        for (int l = 2; l <= kk; ++l)
            if (kk % l == 0) {
                prime_divisors.push_back(l);
                while (kk % l == 0) kk /= l;
            }
        for (int l : prime_divisors) {
            mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p_),
                          static_cast<unsigned long>(k_ / l));
            Poly u = poly_powmod(y, e, m);
            if (u.size() < 2) u.resize(2, zero());
            u[1] = sub(u[1], one());
            Poly g = poly_gcd(poly_trim(u), m);
            if (g.size() != 1) return false;
        }
        return true;
    };

    std::vector<long long> h(static_cast<std::size_t>(k) + 1, 0);
    h[static_cast<std::size_t>(k)] = 1;
    // counter encodes the low coefficients base p
    for (unsigned long long t = 1;; ++t) {
        unsigned long long v = t;
        for (int i = 0; i < k; ++i) {
            h[static_cast<std::size_t>(i)] = static_cast<long long>(v % static_cast<unsigned long long>(p));
            v /= static_cast<unsigned long long>(p);
        }
        if (v != 0) throw domain_error("no irreducible modulus found");
        h_ = h;
        if (irreducible(h)) break;
    }
}

GF::Elem GF::one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
}

GF::Elem GF::from_int(long long a) const {
    Elem e = zero();
    e[0] = fp_mod(a, p_);
    return e;
}

GF::Elem GF::gen() const {
    Elem e = zero();
    if (k_ == 1)
        e[0] = 0;
    else
        e[1] = 1;
    return e;
}

bool GF::is_zero(const Elem& a) const {
    return std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
}

GF::Elem GF::add(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < k_; ++i)
        r[static_cast<std::size_t>(i)] =
            fp_mod(a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)], p_);
    return r;
}

GF::Elem GF::sub(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < k_; ++i)
        r[static_cast<std::size_t>(i)] =
            fp_mod(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)], p_);
    return r;
}

GF::Elem GF::neg(const Elem& a) const { return sub(zero(), a); }

GF::Elem GF::mul(const Elem& a, const Elem& b) const {
    std::vector<long long> t(static_cast<std::size_t>(2 * k_ - 1), 0);
    for (int i = 0; i < k_; ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < k_; ++j)
            t[static_cast<std::size_t>(i + j)] = fp_mod(
                t[static_cast<std::size_t>(i + j)] +
                    fp_mul(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(j)], p_),
                p_);
    }
    // reduce modulo monic h
    for (int d = 2 * k_ - 2; d >= k_; --d) {
        long long c = t[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        t[static_cast<std::size_t>(d)] = 0;
        for (int i = 0; i < k_; ++i)
            t[static_cast<std::size_t>(d - k_ + i)] =
                fp_mod(t[static_cast<std::size_t>(d - k_ + i)] -
                           fp_mul(c, h_[static_cast<std::size_t>(i)], p_),
                       p_);
    }
    t.resize(static_cast<std::size_t>(k_));
    return t;
}

GF::Elem GF::pow(const Elem& a, const mpz_class& e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem base = a, r = one();
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

GF::Elem GF::inv(const Elem& a) const {
    if (is_zero(a)) throw domain_error("inversion of zero in finite field");
    return pow(a, q_ - 2);
}

int GF::subfield_degree(const Elem& a) const {
    for (int d = 1; d <= k_; ++d) {
        if (k_ % d != 0) continue;
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(d));
        if (equal(pow(a, e), a)) return d;
    }
    throw domain_error("internal: element outside its own field");
}

int GF::square_sign(const Elem& a) const {
    if (is_zero(a)) throw domain_error("square test of zero");
    int d = subfield_degree(a);
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(d));
    Elem t = pow(a, (qd - 1) / 2);
    if (equal(t, one())) return 1;
    if (!equal(t, neg(one()))) throw domain_error("internal: square test did not return a sign");
    return -1;
}

bool GF::less(const Elem& a, const Elem& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::string GF::str(const Elem& a) const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < k_; ++i) os << (i ? "," : "") << a[static_cast<std::size_t>(i)];
    os << "]";
    return os.str();
}

GF::Poly GF::poly_trim(Poly f) const {
    while (!f.empty() && is_zero(f.back())) f.pop_back();
    return f;
}

GF::Poly GF::poly_mulmod(const Poly& a, const Poly& b, const Poly& m) const {
    if (a.empty() || b.empty()) return {};
    Poly t(a.size() + b.size() - 1, zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            t[i + j] = add(t[i + j], mul(a[i], b[j]));
    }
    // m is monic
    std::size_t dm = m.size() - 1;
    for (std::size_t deg = t.size(); deg-- > dm;) {
        Elem c = t[deg];
        if (is_zero(c)) continue;
        t[deg] = zero();
        for (std::size_t i = 0; i < dm; ++i)
            t[deg - dm + i] = sub(t[deg - dm + i], mul(c, m[i]));
    }
    if (t.size() > dm) t.resize(dm);
    return poly_trim(t);
}

GF::Poly GF::poly_powmod(Poly base, mpz_class e, const Poly& m) const {
    Poly r = {one()};
    base = poly_trim(base);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, base, m);
        base = poly_mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

GF::Poly GF::poly_gcd(Poly a, Poly b) const {
    a = poly_trim(a);
    b = poly_trim(b);
    while (!b.empty()) {
        // a mod b, b made monic first
        Elem lead_inv = inv(b.back());
        for (auto& c : b) c = mul(c, lead_inv);
        while (a.size() >= b.size()) {
            Elem c = a.back();
            std::size_t shift = a.size() - b.size();
            if (!is_zero(c))
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = sub(a[shift + i], mul(c, b[i]));
            a.pop_back();
            a = poly_trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    a = poly_trim(a);
    if (!a.empty()) {
        Elem lead_inv = inv(a.back());
        for (auto& c : a) c = mul(c, lead_inv);
    }
    return a;
}

void GF::split_roots(const Poly& f, std::vector<Elem>& out, unsigned long long& rng) const {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        // monic x + c
        out.push_back(neg(mul(f[0], inv(f[1]))));
        return;
    }
    // Cantor-Zassenhaus split for odd q: gcd((x+c)^((q-1)/2) - 1, f)
    for (int attempt = 0; attempt < 256; ++attempt) {
        unsigned long long r = next_rng(rng);
        Elem c = zero();
        for (int i = 0; i < k_; ++i) {
            c[static_cast<std::size_t>(i)] =
                static_cast<long long>(r % static_cast<unsigned long long>(p_));
            r /= static_cast<unsigned long long>(p_);
        }
        Poly x_plus_c = {c, one()};
        Poly t = poly_powmod(x_plus_c, (q_ - 1) / 2, f);
        if (t.empty()) continue;
        t[0] = sub(t[0], one());
        Poly g = poly_gcd(poly_trim(t), f);
        if (g.size() <= 1 || g.size() >= f.size()) continue;
        // f = g * (f/g); divide (f monic, g monic)
        Poly q_poly;
        Poly rem = f;
        q_poly.assign(f.size() - g.size() + 1, zero());
        while (rem.size() >= g.size()) {
            Elem c2 = rem.back();
            std::size_t shift = rem.size() - g.size();
            q_poly[shift] = c2;
            if (!is_zero(c2))
                for (std::size_t i = 0; i < g.size(); ++i)
                    rem[shift + i] = sub(rem[shift + i], mul(c2, g[i]));
            rem.pop_back();
            rem = poly_trim(rem);
            if (rem.empty()) break;
        }
        split_roots(g, out, rng);
        split_roots(poly_trim(q_poly), out, rng);
        return;
    }
    throw domain_error("internal: root splitting did not converge");
}

std::vector<GF::Elem> GF::nth_roots(int n, const Elem& u) const {
    if (n < 1) throw domain_error("nth_roots: n must be positive");
    if (is_zero(u)) throw domain_error("nth_roots: radicand is zero");
    Poly f(static_cast<std::size_t>(n) + 1, zero());
    f[0] = neg(u);
    f[static_cast<std::size_t>(n)] = one();
    // keep only the part splitting over this field
    Poly x = {zero(), one()};
    Poly xq = poly_powmod(x, q_, f);
    // xq - x
    Poly diff = xq;
    if (diff.size() < 2) diff.resize(2, zero());
    diff[1] = sub(diff[1], one());
    Poly g = poly_gcd(poly_trim(diff), f);

    std::vector<Elem> roots;
    unsigned long long seed = 0x5851f42d4c957f2dULL ^ static_cast<unsigned long long>(p_) ^
                              (static_cast<unsigned long long>(k_) << 32) ^
                              static_cast<unsigned long long>(n) * 1315423911ULL;
    for (long long c : u) seed = seed * 1099511628211ULL + static_cast<unsigned long long>(c + 1);
    split_roots(g, roots, seed);
    std::sort(roots.begin(), roots.end(), less);
    return roots;
}

int splitting_degree(long long p, int n, long long ubar) {
    ubar = fp_mod(ubar, p);
    if (ubar == 0) throw domain_error("splitting degree of zero radicand");
    for (int m = 1; m <= 64; ++m) {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
        mpz_class qm1 = q - 1;
        if (qm1 % n != 0) continue;
        mpz_class e = (qm1 / n) % mpz_class(static_cast<long>(p - 1));
        if (fp_pow(ubar, e.get_si(), p) == 1) return m;
    }
    throw domain_error("splitting field degree exceeds the supported bound (64)");
}

} // namespace bihyp
