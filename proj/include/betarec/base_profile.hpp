#pragma once

#include <optional>

#include "betarec/number_field.hpp"
#include "betarec/words.hpp"

namespace betarec {

enum class ParryClass { simple, non_simple, not_parry, unknown_cap };

inline const char* parry_class_name(ParryClass c) {
    switch (c) {
        case ParryClass::simple: return "simple";
        case ParryClass::non_simple: return "non_simple";
        case ParryClass::not_parry: return "not_parry";
        default: return "unknown(cap)";
    }
}

/// Certified Pisot test for the root > 1 of a monic irreducible polynomial.
/// Exact throughout: circle conjugates are detected via the trace polynomial
/// of a self-reciprocal defining polynomial (Salem/cyclotomic cases, answered
/// false); otherwise no root has modulus 1 and a Graeffe/Pellet count of the
/// roots in the open unit disk decides.
inline bool is_pisot_polynomial(const IntPolynomial& p) {
    if (!p.is_monic()) throw std::invalid_argument("Pisot test needs an algebraic integer (monic polynomial)");
    int n = p.degree();
    if (n == 1) return true;  // integer base > 1, no conjugates
    if (p.is_self_reciprocal()) {
        IntPolynomial t = trace_polynomial(p);
        SturmChain sturm(t);
        if (sturm.count_roots(Rat(-2), Rat(2)) > 0 || t.eval(Rat(-2)) == 0)
            return false;  // conjugates on the unit circle
    }
    return count_roots_in_unit_disk(p) == n - 1;
}

/// A real base beta > 1 living in a number field, with its canonical digit
/// data and algebraic classification. For rebased powers beta = gamma^k the
/// field is the parent's.
struct BaseProfile {
    FieldPtr field;
    FieldElement beta;
    Int ceil_beta;       // smallest integer >= beta (= beta for integer bases... see note)
    int max_digit = 0;   // canonical alphabet A_beta = {0..max_digit}
    bool pisot = false;
    ParryClass parry = ParryClass::unknown_cap;
    std::optional<EventuallyPeriodicWord> renyi;  // d*_beta(1) when Parry
    std::vector<Digit> d1;                        // greedy d_beta(1) digits (finite iff simple)
    int orbit_cap = 10000;

    bool is_integer_base() const { return field->degree() == 1 && beta.is_rational(); }
    FieldElement elem(const Rat& q) const { return FieldElement::from_rat(field, q); }
    FieldElement zero() const { return FieldElement::zero(field); }
    FieldElement one() const { return FieldElement::one(field); }

    bool operator==(const BaseProfile& o) const {
        return field->defining() == o.field->defining() && beta == o.beta;
    }
};

using BasePtr = std::shared_ptr<const BaseProfile>;

namespace detail {

/// Digits of the Renyi orbit of 1: t1 = floor(beta), r = beta - t1,
/// t_{i+1} = floor(beta r_i). Returns the digit list, whether the orbit hit 0
/// (simple), and the cycle split when eventually periodic.
struct OrbitResult {
    std::vector<Digit> digits;
    bool finite = false;
    int cycle_start = -1;  // index into digits where the period begins
};

inline OrbitResult renyi_orbit(const FieldElement& beta, int cap) {
    OrbitResult out;
    std::map<FieldElement, int> seen;
    FieldElement r = beta;
    for (int i = 0; i < cap; ++i) {
        Int t = r.floor();
        out.digits.push_back(static_cast<Digit>(t.get_si()));
        FieldElement next = (r - Rat(t)) * beta;
        // orbit value tracked after multiplying by beta, i.e. beta * T^i(1)
        if (next.is_zero()) {
            out.finite = true;
            return out;
        }
        auto it = seen.find(next);
        if (it != seen.end()) {
            out.cycle_start = it->second;
            return out;
        }
        seen.emplace(next, static_cast<int>(out.digits.size()));
        r = next;
    }
    return out;  // cap exceeded
}

}  // namespace detail

/// Quasi-greedy d*(1) from the classification data.
inline EventuallyPeriodicWord quasi_greedy_star(const std::vector<Digit>& d1, bool finite,
                                                int cycle_start) {
    if (finite) {
        // (t1 ... t_{m-1} (t_m - 1))^omega
        std::vector<Digit> per = d1;
        per.back() -= 1;
        return EventuallyPeriodicWord({}, std::move(per));
    }
    std::vector<Digit> pre(d1.begin(), d1.begin() + cycle_start);
    std::vector<Digit> per(d1.begin() + cycle_start, d1.end());
    return EventuallyPeriodicWord(std::move(pre), std::move(per));
}

inline void classify_base(BaseProfile& b) {
    auto orbit = detail::renyi_orbit(b.beta, b.orbit_cap);
    b.d1 = orbit.digits;
    if (orbit.finite) {
        b.parry = ParryClass::simple;
        b.renyi = quasi_greedy_star(orbit.digits, true, -1);
    } else if (orbit.cycle_start >= 0) {
        b.parry = ParryClass::non_simple;
        b.renyi = quasi_greedy_star(orbit.digits, false, orbit.cycle_start);
    } else {
        b.parry = ParryClass::unknown_cap;
    }
    if (b.renyi) {
        // d*(1) is shift-maximal; the Bertrand construction relies on it
        const auto& w = *b.renyi;
        for (size_t k = 1; k < w.span(); ++k)
            if (w.shifted(k).compare(w) > 0) throw std::logic_error("d*(1) not shift-maximal");
    }
}

/// Builds a base from its defining polynomial and a rational root selector.
/// Integer bases come in as x - b. Errors per spec: non-monic, reducible,
/// no root > 1 inside the selector.
inline BasePtr make_base(const IntPolynomial& defining, Rat lo, Rat hi, int orbit_cap = 10000) {
    if (!defining.is_monic() || defining.degree() < 1)
        throw std::invalid_argument("base polynomial must be monic of degree >= 1");
    if (!is_irreducible_monic(defining))
        throw std::invalid_argument("base polynomial is reducible over Q");
    if (defining.degree() == 1) {
        Rat root = Rat(-defining.coeff(0));
        if (root <= 1) throw std::invalid_argument("integer base must exceed 1");
        lo = hi = root;
    } else {
        SturmChain sturm(defining);
        if (lo >= hi) throw std::invalid_argument("empty root selector");
        if (sturm.count_roots(lo, hi) != 1)
            throw std::invalid_argument("selector must isolate exactly one real root");
        if (defining.eval(lo) == 0 || defining.eval(hi) == 0)
            throw std::invalid_argument("selector endpoints must not be roots");
    }
    auto field = std::make_shared<NumberField>(defining, lo, hi);
    BaseProfile b;
    b.field = field;
    b.beta = FieldElement::generator(field);
    b.orbit_cap = orbit_cap;
    if ((b.beta - Rat(1)).sign() <= 0) throw std::invalid_argument("selected root is not > 1");
    if (b.beta.is_rational()) {
        b.ceil_beta = rat_ceil(b.beta.rational_value());
    } else {
        // ceil of an irrational: floor + 1
        b.ceil_beta = b.beta.floor() + 1;
    }
    b.max_digit = static_cast<int>(b.ceil_beta.get_si()) - 1;
    b.pisot = is_pisot_polynomial(defining);
    classify_base(b);
    if (b.pisot && b.parry == ParryClass::unknown_cap)
        throw std::logic_error("Pisot base failed to classify as Parry within the orbit cap");
    return std::make_shared<BaseProfile>(std::move(b));
}

inline BasePtr make_integer_base(long n, int orbit_cap = 10000) {
    return make_base(IntPolynomial::linear(Int(n)), Rat(n), Rat(n), orbit_cap);
}

/// Base beta^k inside the same field. Pisot is inherited (conjugates of
/// beta^k are k-th powers of conjugates of beta).
inline BasePtr make_power_base(const BasePtr& base, int k, int orbit_cap = 10000) {
    if (k < 1) throw std::invalid_argument("power must be >= 1");
    if (k == 1) return base;
    BaseProfile b;
    b.field = base->field;
    b.beta = base->beta.pow(k);
    b.orbit_cap = orbit_cap;
    if (b.beta.is_rational())
        b.ceil_beta = rat_ceil(b.beta.rational_value());
    else
        b.ceil_beta = b.beta.floor() + 1;
    b.max_digit = static_cast<int>(b.ceil_beta.get_si()) - 1;
    b.pisot = base->pisot;
    classify_base(b);
    return std::make_shared<BaseProfile>(std::move(b));
}

/// Multiplicative independence for integer bases: dependent iff both are
/// powers of one common integer, decided via exponent gcds of the prime
/// factorizations.
inline bool is_mult_independent(const Int& b1, const Int& b2) {
    if (b1 < 2 || b2 < 2) throw std::invalid_argument("multiplicative independence needs integers >= 2");
    auto primitive_root = [](Int n) {
        // factor n, take gcd of exponents g, return n^(1/g)
        Int m = n;
        std::vector<std::pair<Int, unsigned>> fac;
        for (Int p(2); p * p <= m; ++p) {
            if (m % p == 0) {
                unsigned e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                fac.emplace_back(p, e);
            }
        }
        if (m > 1) fac.emplace_back(m, 1);
        unsigned g = 0;
        for (auto& [p, e] : fac) g = g == 0 ? e : std::gcd(g, e);
        Int root(1);
        for (auto& [p, e] : fac) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / g);
            root *= pe;
        }
        return root;
    };
    return primitive_root(b1) != primitive_root(b2);
}

}  // namespace betarec
