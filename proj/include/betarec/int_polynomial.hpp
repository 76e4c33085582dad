#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "betarec/rational.hpp"

namespace betarec {

/// Univariate polynomial over arbitrary-precision integers, coefficients
/// stored lowest degree first with a nonzero leading coefficient.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPolynomial from_ints(std::initializer_list<long> coeffs) {
        std::vector<Int> c;
        for (long v : coeffs) c.emplace_back(v);
        return IntPolynomial(std::move(c));
    }
    /// x - b, the defining polynomial of an integer base.
    static IntPolynomial linear(const Int& b) { return IntPolynomial({-b, Int(1)}); }

    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const Int& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const Int& coeff(size_t i) const {
        static const Int zero(0);
        return i < c_.size() ? c_[i] : zero;
    }

    bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }
    Int eval(const Int& x) const {
        Int acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    RatInterval eval(const RatInterval& x) const {
        RatInterval acc = RatInterval::point(Rat(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }

    IntPolynomial derivative() const {
        if (c_.size() <= 1) return IntPolynomial();
        std::vector<Int> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(static_cast<long>(i));
        return IntPolynomial(std::move(d));
    }

    IntPolynomial operator-() const {
        std::vector<Int> d = c_;
        for (auto& v : d) v = -v;
        return IntPolynomial(std::move(d));
    }
    IntPolynomial operator+(const IntPolynomial& o) const {
        std::vector<Int> d(std::max(c_.size(), o.c_.size()), Int(0));
        for (size_t i = 0; i < c_.size(); ++i) d[i] += c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) d[i] += o.c_[i];
        return IntPolynomial(std::move(d));
    }
    IntPolynomial operator-(const IntPolynomial& o) const { return *this + (-o); }
    IntPolynomial operator*(const IntPolynomial& o) const {
        if (is_zero() || o.is_zero()) return IntPolynomial();
        std::vector<Int> d(c_.size() + o.c_.size() - 1, Int(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) d[i + j] += c_[i] * o.c_[j];
        return IntPolynomial(std::move(d));
    }

    /// Exact division by a monic divisor; nullopt if the remainder is nonzero.
    std::optional<IntPolynomial> divide_monic(const IntPolynomial& div) const {
        if (div.is_zero() || !div.is_monic()) throw std::invalid_argument("divisor must be monic");
        std::vector<Int> rem = c_;
        int dd = div.degree();
        if (degree() < dd) return is_zero() ? std::optional<IntPolynomial>(IntPolynomial()) : std::nullopt;
        std::vector<Int> quo(degree() - dd + 1, Int(0));
        for (int i = degree(); i >= dd; --i) {
            Int q = rem[i];
            if (q == 0) continue;
            quo[i - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * div.coeff(j);
        }
        for (int j = 0; j < dd; ++j)
            if (rem[j] != 0) return std::nullopt;
        return IntPolynomial(std::move(quo));
    }

    /// Reversal x^n p(1/x).
    IntPolynomial reversed() const {
        std::vector<Int> d(c_.rbegin(), c_.rend());
        return IntPolynomial(std::move(d));
    }
    bool is_self_reciprocal() const { return reversed() == *this; }

    /// One Graeffe step: returns q with q(x^2) = (-1)^n p(x) p(-x); q's roots
    /// are the squares of p's roots. Preserves monicity.
    IntPolynomial graeffe() const {
        // split into even/odd parts: p(x) = E(x^2) + x O(x^2)
        std::vector<Int> e, o;
        for (size_t i = 0; i < c_.size(); ++i)
            (i % 2 == 0 ? e : o).push_back(c_[i]);
        IntPolynomial E{std::vector<Int>(e)}, O{std::vector<Int>(o)};
        IntPolynomial q = E * E - IntPolynomial({Int(0), Int(1)}) * O * O;
        if (!q.is_zero() && q.leading() < 0) q = -q;
        return q;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Int& a = coeff(i);
            if (a == 0) continue;
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            Int aa = abs(a);
            if (aa != 1 || i == 0) os << aa.get_str();
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
            first = false;
        }
        return os.str();
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Int> c_;
};

namespace detail {

/// Rational-coefficient polynomial, internal to Sturm chains.
struct RatPoly {
    std::vector<Rat> c;  // lowest first

    explicit RatPoly(const IntPolynomial& p) {
        for (const Int& v : p.coeffs()) c.emplace_back(v);
    }
    RatPoly() = default;

    bool zero() const { return c.empty(); }
    int deg() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
    void norm() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    /// this mod d (d nonzero), via standard long division.
    RatPoly rem(const RatPoly& d) const {
        RatPoly r = *this;
        r.norm();
        while (!r.zero() && r.deg() >= d.deg()) {
            Rat q = r.c.back() / d.c.back();
            int shift = r.deg() - d.deg();
            for (int j = 0; j <= d.deg(); ++j) r.c[shift + j] -= q * d.c[j];
            r.norm();
        }
        return r;
    }
};

inline int sign_of(const Rat& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

}  // namespace detail

/// Sturm chain of p (square part removed by the chain itself when p is
/// squarefree; callers here always pass squarefree polynomials).
class SturmChain {
public:
    explicit SturmChain(const IntPolynomial& p) {
        detail::RatPoly a(p), b(p.derivative());
        chain_.push_back(a);
        while (!b.zero()) {
            chain_.push_back(b);
            detail::RatPoly r = a.rem(b);
            for (auto& v : r.c) v = -v;
            a = std::move(b);
            b = std::move(r);
        }
    }

    int variations_at(const Rat& x) const {
        int var = 0, last = 0;
        for (const auto& q : chain_) {
            int s = detail::sign_of(q.eval(x));
            if (s != 0) {
                if (last != 0 && s != last) ++var;
                last = s;
            }
        }
        return var;
    }

    /// Number of distinct real roots in (a, b], for a < b.
    int count_roots(const Rat& a, const Rat& b) const {
        return variations_at(a) - variations_at(b);
    }

private:
    std::vector<detail::RatPoly> chain_;
};

/// Cauchy bound: all real roots lie in [-B, B].
inline Rat cauchy_root_bound(const IntPolynomial& p) {
    Rat m(0);
    Rat lead = Rat(abs(p.leading()));
    for (int i = 0; i < p.degree(); ++i) {
        Rat v = Rat(abs(p.coeff(i))) / lead;
        if (v > m) m = v;
    }
    return m + 1;
}

namespace detail {

// --- irreducibility over Q for monic integer polynomials ---

inline Int mod_p(const Int& a, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

struct ModPoly {
    std::vector<Int> c;  // lowest first, coefficients in [0, p)
    Int p;

    void norm() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
};

inline ModPoly to_mod(const IntPolynomial& f, const Int& p) {
    ModPoly m;
    m.p = p;
    for (const Int& v : f.coeffs()) m.c.push_back(mod_p(v, p));
    m.norm();
    return m;
}

inline ModPoly mod_mul(const ModPoly& a, const ModPoly& b) {
    ModPoly r;
    r.p = a.p;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = mod_p(r.c[i + j] + a.c[i] * b.c[j], r.p);
    r.norm();
    return r;
}

inline ModPoly mod_rem(ModPoly a, const ModPoly& b) {
    // b monic-izable: divide by inverse of leading coefficient
    Int lead = b.c.back();
    Int inv;
    mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), b.p.get_mpz_t());
    a.norm();
    while (a.deg() >= b.deg() && !a.c.empty()) {
        Int q = mod_p(a.c.back() * inv, a.p);
        int shift = a.deg() - b.deg();
        for (int j = 0; j <= b.deg(); ++j) a.c[shift + j] = mod_p(a.c[shift + j] - q * b.c[j], a.p);
        a.norm();
    }
    return a;
}

inline ModPoly mod_gcd(ModPoly a, ModPoly b) {
    a.norm();
    b.norm();
    while (!b.c.empty()) {
        ModPoly r = mod_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// x^(p^e) mod f via repeated squaring on exponent p^e.
inline ModPoly mod_xpow(const ModPoly& f, const Int& exponent) {
    ModPoly x;
    x.p = f.p;
    x.c = {Int(0), Int(1)};
    ModPoly acc;
    acc.p = f.p;
    acc.c = {Int(1)};
    ModPoly base = mod_rem(x, f);
    Int e = exponent;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = mod_rem(mod_mul(acc, base), f);
        base = mod_rem(mod_mul(base, base), f);
        e >>= 1;
    }
    return acc;
}

/// Rabin's irreducibility test for f mod p (f squarefree mod p assumed via gcd check).
inline bool irreducible_mod_p(const IntPolynomial& f, long prime) {
    Int p(prime);
    ModPoly fm = to_mod(f, p);
    if (fm.deg() != f.degree()) return false;  // leading coeff vanished
    int n = fm.deg();
    // must be squarefree mod p for the test; gcd(f, f') check
    ModPoly d = to_mod(f.derivative(), p);
    if (d.c.empty()) return false;
    ModPoly g = mod_gcd(fm, d);
    if (g.deg() > 0) return false;
    // distinct prime divisors of n
    std::vector<int> qs;
    int m = n;
    for (int q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            qs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) qs.push_back(m);
    for (int q : qs) {
        Int e;
        mpz_pow_ui(e.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n / q));
        ModPoly xq = mod_xpow(fm, e);
        // gcd(x^(p^(n/q)) - x, f) must be constant
        ModPoly diff = xq;
        if (diff.c.size() < 2) diff.c.resize(2, Int(0));
        diff.c[1] = mod_p(diff.c[1] - 1, p);
        diff.norm();
        ModPoly h = mod_gcd(fm, diff);
        if (h.deg() > 0) return false;
    }
    Int en;
    mpz_pow_ui(en.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n));
    ModPoly xn = mod_xpow(fm, en);
    ModPoly diff = xn;
    if (diff.c.size() < 2) diff.c.resize(2, Int(0));
    diff.c[1] = mod_p(diff.c[1] - 1, p);
    diff.norm();
    return diff.c.empty();
}

inline std::vector<Int> divisors_of(const Int& n0) {
    Int n = abs(n0);
    std::vector<Int> ds;
    if (n == 0) return ds;
    for (Int d(1); d * d <= n; ++d)
        if (n % d == 0) {
            ds.push_back(d);
            if (d * d != n) ds.push_back(n / d);
        }
    std::vector<Int> all;
    for (const Int& d : ds) {
        all.push_back(d);
        all.push_back(-d);
    }
    std::sort(all.begin(), all.end());
    return all;
}

/// Exhaustive search for a monic factor of degree m with bounded coefficients.
/// Returns true if some factor exists. Sound and complete for monic f: any
/// monic rational factor has integer coefficients (Gauss) bounded by the
/// Mignotte-style bound B.
inline bool has_monic_factor_of_degree(const IntPolynomial& f, int m, const Int& bound) {
    std::vector<Int> consts = divisors_of(f.coeff(0));
    std::vector<Int> cand(static_cast<size_t>(m) + 1);
    cand[m] = 1;
    // enumerate middle coefficients in [-B, B], constant from divisors
    std::vector<Int> mid(static_cast<size_t>(std::max(0, m - 1)), -bound);
    while (true) {
        for (int i = 0; i < m - 1; ++i) cand[i + 1] = mid[i];
        for (const Int& c0 : consts) {
            cand[0] = c0;
            IntPolynomial g{std::vector<Int>(cand)};
            if (f.divide_monic(g)) return true;
        }
        // odometer
        int i = 0;
        for (; i < m - 1; ++i) {
            if (mid[i] < bound) {
                ++mid[i];
                break;
            }
            mid[i] = -bound;
        }
        if (m <= 1 || i == m - 1) break;
    }
    return false;
}

}  // namespace detail

/// Irreducibility over Q of a monic integer polynomial of degree >= 1.
/// Fast path: irreducible mod p for a small prime certifies irreducibility.
/// Complete fallback: bounded enumeration of monic factors.
inline bool is_irreducible_monic(const IntPolynomial& f) {
    if (!f.is_monic()) throw std::invalid_argument("irreducibility check expects a monic polynomial");
    int n = f.degree();
    if (n <= 0) throw std::invalid_argument("degree must be >= 1");
    if (n == 1) return true;
    if (f.coeff(0) == 0) return false;  // x divides
    static const long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                  53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    for (long p : primes)
        if (detail::irreducible_mod_p(f, p)) return true;
    if (n > 10) throw std::runtime_error("irreducibility fallback limited to degree 10");
    // Mignotte bound on factor coefficients: ||f||_1 * 2^m
    Int norm1(0);
    for (const Int& c : f.coeffs()) norm1 += abs(c);
    for (int m = 1; m <= n / 2; ++m) {
        Int bound = norm1 * (Int(1) << m);
        if (detail::has_monic_factor_of_degree(f, m, bound)) return false;
    }
    return true;
}

/// Pellet's test at radius 1: if for some k, |c_k| > sum of all other |c_i|,
/// the polynomial has exactly k roots in the open unit disk (and none on the
/// circle). Returns that k, or nullopt if the test is inconclusive.
inline std::optional<int> pellet_count_unit_disk(const IntPolynomial& p) {
    Int total(0);
    for (const Int& c : p.coeffs()) total += abs(c);
    for (int k = 0; k <= p.degree(); ++k) {
        Int ck = abs(p.coeff(k));
        if (ck > total - ck) return k;
    }
    return std::nullopt;
}

/// Exact count of roots (with multiplicity) of p in the open unit disk,
/// assuming no roots on the unit circle. Graeffe iteration squares the roots
/// until the moduli separate enough for Pellet's test to fire.
inline int count_roots_in_unit_disk(const IntPolynomial& p, int max_graeffe = 24) {
    IntPolynomial q = p;
    for (int it = 0; it <= max_graeffe; ++it) {
        if (auto k = pellet_count_unit_disk(q)) return *k;
        q = q.graeffe();
    }
    throw std::runtime_error("unit-disk root count did not converge (root on or near |z|=1?)");
}

/// For self-reciprocal p of even degree 2d, the trace polynomial T with
/// p(x) = x^d T(x + 1/x); p has roots on the unit circle iff T has real
/// roots in [-2, 2].
inline IntPolynomial trace_polynomial(const IntPolynomial& p) {
    int n = p.degree();
    if (n % 2 != 0 || !p.is_self_reciprocal())
        throw std::invalid_argument("trace polynomial needs an even self-reciprocal polynomial");
    int d = n / 2;
    // W_0 = 2, W_1 = u, W_{j+1} = u W_j - W_{j-1}; T = a_d + sum a_{d+j} W_j
    IntPolynomial u = IntPolynomial({Int(0), Int(1)});
    IntPolynomial W_prev = IntPolynomial({Int(2)});
    IntPolynomial W_cur = u;
    IntPolynomial T = IntPolynomial({p.coeff(d)});
    for (int j = 1; j <= d; ++j) {
        T = T + IntPolynomial({p.coeff(d + j)}) * W_cur;
        IntPolynomial W_next = u * W_cur - W_prev;
        W_prev = W_cur;
        W_cur = W_next;
    }
    return T;
}

}  // namespace betarec
