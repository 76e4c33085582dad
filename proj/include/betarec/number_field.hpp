#pragma once

#include <map>
#include <memory>

#include "betarec/int_polynomial.hpp"

namespace betarec {

/// The real algebraic number field Q(gamma), gamma the unique root of a monic
/// irreducible integer polynomial inside an isolating interval. The interval
/// is refinable on demand; refinement only ever shrinks it.
class NumberField {
public:
    /// Caller guarantees (or has checked) monic + irreducible; the isolating
    /// interval must contain exactly one real root.
    NumberField(IntPolynomial defining, Rat lo, Rat hi)
        : p_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!p_.is_monic() || p_.degree() < 1)
            throw std::invalid_argument("defining polynomial must be monic of degree >= 1");
        if (p_.degree() == 1) {
            // rational root, pin the interval to the point
            lo_ = hi_ = Rat(-p_.coeff(0));
        } else {
            if (p_.eval(lo_) == 0 || p_.eval(hi_) == 0)
                throw std::invalid_argument("isolating endpoints must not be roots");
            if (detail::sign_of(p_.eval(lo_)) == detail::sign_of(p_.eval(hi_)))
                throw std::invalid_argument("endpoints do not bracket a root");
        }
    }

    const IntPolynomial& defining() const { return p_; }
    int degree() const { return p_.degree(); }

    RatInterval interval() const { return {lo_, hi_}; }

    /// Halves the isolating interval (no-op for degree 1).
    void refine() const {
        if (p_.degree() == 1) return;
        Rat mid = (lo_ + hi_) / 2;
        // mid is rational, the root is irrational (degree >= 2 irreducible), so p(mid) != 0
        if (detail::sign_of(p_.eval(mid)) == detail::sign_of(p_.eval(lo_)))
            lo_ = mid;
        else
            hi_ = mid;
    }

    void refine_below(const Rat& width) const {
        while (hi_ - lo_ > width) refine();
    }

    double approx() const {
        refine_below(Rat(1, 1000000));
        return Rat((lo_ + hi_) / 2).get_d();
    }

private:
    IntPolynomial p_;
    mutable Rat lo_, hi_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q(gamma) as a rational-coefficient polynomial residue in the
/// power basis 1, gamma, ..., gamma^(deg-1). Immutable value type; all
/// arithmetic and comparisons are exact.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr field, std::vector<Rat> coords)
        : field_(std::move(field)), c_(std::move(coords)) {
        c_.resize(static_cast<size_t>(field_->degree()), Rat(0));
        for (auto& v : c_) v.canonicalize();
    }
    static FieldElement from_rat(const FieldPtr& field, const Rat& q) {
        std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
        c[0] = q;
        return FieldElement(field, std::move(c));
    }
    static FieldElement zero(const FieldPtr& field) { return from_rat(field, Rat(0)); }
    static FieldElement one(const FieldPtr& field) { return from_rat(field, Rat(1)); }
    /// The generator gamma itself.
    static FieldElement generator(const FieldPtr& field) {
        std::vector<Rat> c(static_cast<size_t>(field->degree()), Rat(0));
        if (field->degree() == 1)
            c[0] = Rat(-field->defining().coeff(0));
        else
            c[1] = 1;
        return FieldElement(field, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_value() const {
        if (!is_rational()) throw std::logic_error("not a rational element");
        return c_[0];
    }

    bool operator==(const FieldElement& o) const { return c_ == o.c_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    /// Coordinatewise order for use as a map key (not the field order).
    bool operator<(const FieldElement& o) const {
        for (size_t i = 0; i < c_.size(); ++i) {
            int cmpv = cmp(c_[i], o.c_[i]);
            if (cmpv != 0) return cmpv < 0;
        }
        return false;
    }

    FieldElement operator-() const {
        std::vector<Rat> d = c_;
        for (auto& v : d) v = -v;
        return FieldElement(field_, std::move(d));
    }
    FieldElement operator+(const FieldElement& o) const {
        check_same(o);
        std::vector<Rat> d = c_;
        for (size_t i = 0; i < d.size(); ++i) d[i] += o.c_[i];
        return FieldElement(field_, std::move(d));
    }
    FieldElement operator-(const FieldElement& o) const { return *this + (-o); }
    FieldElement operator*(const FieldElement& o) const {
        check_same(o);
        size_t n = c_.size();
        std::vector<Rat> prod(2 * n - 1, Rat(0));
        for (size_t i = 0; i < n; ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < n; ++j) prod[i + j] += c_[i] * o.c_[j];
        }
        reduce(prod);
        prod.resize(n);
        return FieldElement(field_, std::move(prod));
    }
    FieldElement operator*(const Rat& q) const {
        std::vector<Rat> d = c_;
        for (auto& v : d) v *= q;
        return FieldElement(field_, std::move(d));
    }
    FieldElement operator+(const Rat& q) const {
        std::vector<Rat> d = c_;
        d[0] += q;
        return FieldElement(field_, std::move(d));
    }
    FieldElement operator-(const Rat& q) const { return *this + Rat(-q); }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
    /// against the defining polynomial.
    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        size_t n = c_.size();
        if (n == 1) return from_rat(field_, Rat(1) / c_[0]);
        // r0 = defining, r1 = this; track s only for r1 combinations
        std::vector<Rat> r0, r1 = c_;
        for (const Int& v : field_->defining().coeffs()) r0.emplace_back(v);
        std::vector<Rat> s0(1, Rat(0)), s1(1, Rat(1));
        auto norm = [](std::vector<Rat>& p) {
            while (!p.empty() && p.back() == 0) p.pop_back();
        };
        norm(r0);
        norm(r1);
        while (true) {
            // r0 = q*r1 + r: long division
            std::vector<Rat> r = r0, q;
            q.assign(r0.size(), Rat(0));
            while (r.size() >= r1.size() && !r.empty()) {
                Rat f = r.back() / r1.back();
                size_t shift = r.size() - r1.size();
                q[shift] += f;
                for (size_t j = 0; j < r1.size(); ++j) r[shift + j] -= f * r1[j];
                norm(r);
            }
            // s_new = s0 - q*s1
            std::vector<Rat> snew = s0;
            snew.resize(std::max(s0.size(), q.size() + s1.size()), Rat(0));
            for (size_t i = 0; i < q.size(); ++i) {
                if (q[i] == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) snew[i + j] -= q[i] * s1[j];
            }
            norm(snew);
            if (r.empty()) {
                // r1 is the gcd; must be a nonzero constant (irreducible defining)
                if (r1.size() != 1) throw std::logic_error("non-constant gcd against irreducible polynomial");
                std::vector<Rat> inv = s1;
                for (auto& v : inv) v /= r1[0];
                inv.resize(n, Rat(0));
                return FieldElement(field_, std::move(inv));
            }
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(snew);
        }
    }

    FieldElement pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement acc = one(field_), base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) acc = acc * base;
            base = base * base;
            u >>= 1;
        }
        return acc;
    }

    /// Exact sign. Zero iff all coordinates are zero; otherwise the value is
    /// irrational-or-nonzero and interval refinement terminates.
    int sign() const {
        if (is_zero()) return 0;
        if (is_rational()) return detail::sign_of(c_[0]);
        constexpr int kMaxRefine = 1000000;  // hard cap, then it is a logic error
        for (int step = 0; step < kMaxRefine; ++step) {
            RatInterval v = eval_interval();
            if (!v.contains_zero()) return v.lo > 0 ? 1 : -1;
            field_->refine();
        }
        throw std::runtime_error("sign refinement cap exceeded");
    }

    int compare(const FieldElement& o) const { return (*this - o).sign(); }
    bool lt(const FieldElement& o) const { return compare(o) < 0; }
    bool le(const FieldElement& o) const { return compare(o) <= 0; }
    FieldElement abs() const { return sign() < 0 ? -*this : *this; }

    /// Largest integer <= value, exact.
    Int floor() const {
        if (is_rational()) return rat_floor(c_[0]);
        while (true) {
            RatInterval v = eval_interval();
            Int fl = rat_floor(v.lo), fh = rat_floor(v.hi);
            if (fl == fh && Rat(fh) != v.hi) return fl;
            // value is irrational, so it separates from any integer eventually
            field_->refine();
        }
    }

    RatInterval eval_interval() const {
        RatInterval x = field_->interval();
        RatInterval acc = RatInterval::point(Rat(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    double approx() const {
        field_->refine_below(Rat(1, 1) / Rat(Int(1) << 80));
        RatInterval v = eval_interval();
        return Rat((v.lo + v.hi) / 2).get_d();
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ",";
            os << c_[i].get_str();
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_ && !(field_->defining() == o.field_->defining()))
            throw std::invalid_argument("field elements over different bases");
    }

    /// Reduces a coefficient vector of length 2n-1 modulo the defining
    /// polynomial (monic), in place.
    void reduce(std::vector<Rat>& v) const {
        const auto& p = field_->defining().coeffs();
        size_t n = p.size() - 1;  // degree
        for (size_t i = v.size(); i-- > n;) {
            Rat f = v[i];
            if (f == 0) continue;
            v[i] = 0;
            for (size_t j = 0; j < n; ++j) v[i - n + j] -= f * Rat(p[j]);
        }
    }

    FieldPtr field_;
    std::vector<Rat> c_;
};

}  // namespace betarec
