#pragma once

#include "betarec/base_profile.hpp"

namespace betarec {

/// d*_beta(1), the Renyi expansion of 1 (quasi-greedy for simple Parry).
inline EventuallyPeriodicWord renyi_star(const BaseProfile& base) {
    if (!base.renyi)
        throw std::domain_error("base not detectably Parry within the orbit cap");
    return *base.renyi;
}

/// |preperiod| + |period| of the canonical d*(1); any 0^{n1} 1 0^{n2} 1 ...
/// with n_i >= this constant is a valid expansion tail.
inline int admissibility_gap_constant(const BaseProfile& base) {
    auto star = renyi_star(base);
    return static_cast<int>(star.pre.size() + star.per.size());
}

/// Parry admissibility: every shift of u is lexicographically below d*(1).
/// u must use canonical digits 0..max_digit.
inline bool is_admissible(const EventuallyPeriodicWord& u, const BaseProfile& base) {
    for (size_t i = 0; i < u.span(); ++i) {
        Digit d = u.at(i);
        if (d < 0 || d > base.max_digit) throw std::invalid_argument("digit outside canonical alphabet");
    }
    auto star = renyi_star(base);
    for (size_t k = 0; k < u.span(); ++k)
        if (u.shifted(k).compare(star) >= 0) return false;
    return true;
}

/// Exact value of a pointed word: integer digits at beta^i, fractional tail
/// summed in closed form with 1/(1 - beta^{-p}).
inline FieldElement value_of(const PointedWord& w, const BaseProfile& base) {
    FieldElement beta = base.beta;
    FieldElement v = base.zero();
    for (Digit d : w.int_part) v = v * beta + base.elem(Rat(d));
    FieldElement binv = beta.inverse();
    FieldElement scale = binv;
    for (Digit d : w.frac.pre) {
        v = v + base.elem(Rat(d)) * scale;
        scale = scale * binv;
    }
    FieldElement head = base.zero();
    FieldElement s = scale;
    for (Digit d : w.frac.per) {
        head = head + base.elem(Rat(d)) * s;
        s = s * binv;
    }
    // geometric tail: head * 1/(1 - beta^{-p})
    FieldElement ratio = base.one() - binv.pow(static_cast<long>(w.frac.per.size()));
    if (ratio.is_zero()) throw std::logic_error("geometric ratio vanished (beta <= 1?)");
    return v + head * ratio.inverse();
}

/// The unique beta-expansion d_beta(x) of x in Q(beta). The fractional orbit
/// T(y) = beta y - floor(beta y) is tracked exactly with cycle detection;
/// for Pisot bases the orbit of any element of Q(beta) is eventually periodic.
inline PointedWord greedy_expand(const FieldElement& x, const BaseProfile& base,
                                 int max_steps = 10000) {
    if (x.is_zero()) return PointedWord({0}, EventuallyPeriodicWord::zeros());
    if (x.sign() < 0) return greedy_expand(-x, base, max_steps).negated();

    FieldElement beta = base.beta;
    std::vector<Digit> int_digits;
    FieldElement r = x;
    if (x.compare(base.one()) >= 0) {
        // minimal k with x < beta^{k+1}
        int k = 0;
        FieldElement pw = beta;  // beta^{k+1}
        while (x.compare(pw) >= 0) {
            ++k;
            pw = pw * beta;
        }
        FieldElement scale = pw * beta.inverse();  // beta^k
        for (int i = k; i >= 0; --i) {
            Int d = (r * scale.inverse()).floor();
            int_digits.push_back(static_cast<Digit>(d.get_si()));
            r = r - scale * Rat(d);
            scale = scale * beta.inverse();
        }
    } else {
        int_digits.push_back(0);
    }

    // fractional orbit with exact cycle detection
    std::vector<Digit> frac_digits;
    std::map<FieldElement, int> seen;
    int cycle_start = -1;
    for (int step = 0; step < max_steps; ++step) {
        if (r.is_zero()) {
            return PointedWord(std::move(int_digits),
                               EventuallyPeriodicWord(std::move(frac_digits), {0}));
        }
        auto it = seen.find(r);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(r, static_cast<int>(frac_digits.size()));
        FieldElement br = r * beta;
        Int d = br.floor();
        frac_digits.push_back(static_cast<Digit>(d.get_si()));
        r = br - Rat(d);
    }
    if (cycle_start < 0)
        throw std::runtime_error("fractional orbit did not cycle within the step cap");
    std::vector<Digit> pre(frac_digits.begin(), frac_digits.begin() + cycle_start);
    std::vector<Digit> per(frac_digits.begin() + cycle_start, frac_digits.end());
    return PointedWord(std::move(int_digits), EventuallyPeriodicWord(std::move(pre), std::move(per)));
}

/// Quasi-greedy expansion: equal to d_beta(x) unless that is finite, in which
/// case the last nonzero digit is decremented and d*(1) appended (the
/// limit-from-below representation; the paper's section 2.3 display uses it).
inline PointedWord quasi_greedy_expand(const FieldElement& x, const BaseProfile& base,
                                       int max_steps = 10000) {
    PointedWord w = greedy_expand(x, base, max_steps);
    if (x.is_zero()) return w;
    if (x.sign() < 0) return quasi_greedy_expand(-x, base, max_steps).negated();
    if (!(w.frac.per == std::vector<Digit>{0})) return w;  // already infinite
    auto star = renyi_star(base);
    if (!w.frac.pre.empty()) {
        // canonical form leaves the last preperiod digit nonzero
        std::vector<Digit> pre = w.frac.pre;
        pre.back() -= 1;
        for (Digit d : star.pre) pre.push_back(d);
        return PointedWord(w.int_part, EventuallyPeriodicWord(std::move(pre), star.per));
    }
    // last nonzero digit sits in the integer part
    std::vector<Digit> ip = w.int_part;
    size_t j = ip.size();
    while (j > 0 && ip[j - 1] == 0) --j;
    if (j == 0) return w;
    ip[j - 1] -= 1;
    size_t fill = ip.size() - j;  // integer positions below the decremented digit
    for (size_t i = 0; i < fill; ++i) ip[j + i] = star.at(i);
    return PointedWord(std::move(ip), star.shifted(fill));
}

}  // namespace betarec
