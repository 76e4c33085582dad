#pragma once

#include "betarec/automaton_ops.hpp"
#include "betarec/beta_numeration.hpp"

namespace betarec {

/// Leading-zero convention of a set automaton's language.
enum class PaddingMode { exact, zero_padded };

/// beta-recognizable subset of R^n: a Buchi automaton over the signed tuple
/// alphabet plus star. The language is kept value-consistent: it accepts
/// exactly the format words (sign-coherent, star-synchronized, per-track
/// quasi-admissible) whose value lies in the set, up to the padding mode.
struct RealSetAutomaton {
    BasePtr base;
    int arity = 1;
    BuchiAutomaton machine;
    PaddingMode mode = PaddingMode::zero_padded;
};

inline Alphabet signed_tuple_alphabet(const BaseProfile& base, int arity) {
    return Alphabet::full_signed(arity, base.max_digit);
}

/// Deterministic automaton of the beta-shift closure (all states accepting):
/// the canonical "Bertrand" automaton of d*(1). For the golden mean this is
/// the two-state automaton with a 0-loop and a 1/0 cycle.
inline BuchiAutomaton bertrand_automaton(const BaseProfile& base) {
    auto star = renyi_star(base);
    int m = static_cast<int>(star.pre.size()), p = static_cast<int>(star.per.size());
    int n = m + p;
    BuchiAutomaton out(Alphabet(1));
    for (int i = 0; i < n; ++i) out.add_state(true);
    for (int i = 0; i < n; ++i) {
        Digit t = star.at(static_cast<size_t>(i));
        // matching digit advances (wrapping into the period), smaller digits
        // reset; larger digits kill the run (shift-maximality of d* makes the
        // reset exact, no KMP needed)
        int next = i + 1 < n ? i + 1 : m;
        out.add_transition(i, Symbol::single(t), next);
        for (Digit d = 0; d < t; ++d) out.add_transition(i, Symbol::single(d), 0);
    }
    out.set_initial({0});
    out.finalize();
    return out;
}

namespace detail {

/// Per-track walker state for the n-track universe product.
struct UniverseBuilder {
    const BaseProfile& base;
    int arity;
    std::vector<int> signs;  // +1 / -1 per track
    BuchiAutomaton bert;

    explicit UniverseBuilder(const BaseProfile& b, int n)
        : base(b), arity(n), bert(bertrand_automaton(b)) {}

    std::optional<int> step(int bstate, Digit d, int sign) const {
        Digit mag = sign < 0 ? -d : d;
        if (mag < 0 || mag > base.max_digit) return std::nullopt;
        auto sid = bert.alphabet.find(Symbol::single(mag));
        if (!sid) return std::nullopt;
        auto succ = bert.post(bstate, *sid);
        if (succ.empty()) return std::nullopt;
        return succ[0];
    }
};

}  // namespace detail

/// The automaton for 0* d_beta(R^n): disjoint union over the 2^n sign
/// vectors of the two-copies (integer/fractional) Bertrand construction with
/// a fresh zero-looping initial state per copy.
inline RealSetAutomaton universe_uncached(const BasePtr& base, int arity) {
    if (!base->renyi) throw std::domain_error("universe requires a Parry base");
    detail::UniverseBuilder ub(*base, arity);
    Alphabet alpha = signed_tuple_alphabet(*base, arity);
    BuchiAutomaton out(alpha);
    std::vector<int> inits;
    // state key: (sign vector id, phase 0=init 1=int 2=frac, bertrand tuple)
    std::map<std::tuple<int, int, std::vector<int>>, int> id;
    std::deque<std::tuple<int, int, std::vector<int>>> work;
    for (int sv = 0; sv < (1 << arity); ++sv) {
        std::vector<int> zeros(static_cast<size_t>(arity), 0);
        auto key = std::make_tuple(sv, 0, zeros);
        int s = out.add_state(false);
        id.emplace(key, s);
        work.push_back(key);
        inits.push_back(s);
    }
    auto get = [&](int sv, int phase, std::vector<int> bt) {
        auto key = std::make_tuple(sv, phase, std::move(bt));
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = out.add_state(phase == 2);
        id.emplace(key, s);
        work.push_back(key);
        return s;
    };
    while (!work.empty()) {
        auto [sv, phase, bt] = work.front();
        work.pop_front();
        int from = id[{sv, phase, bt}];
        if (phase == 0) {
            // zero-tuple loop for the 0* padding
            std::vector<Digit> zt(static_cast<size_t>(arity), 0);
            out.add_transition(from, Symbol::tuple(zt), from);
        }
        if (phase == 1 || phase == 0) {
            // star bridge (int phase only; init must consume one digit first)
            if (phase == 1) {
                int to = get(sv, 2, bt);
                out.add_transition(from, Symbol::star_sym(), to);
            }
            for (const auto& sym : alpha.symbols()) {
                if (sym.star) continue;
                std::vector<int> nbt(static_cast<size_t>(arity));
                bool ok = true;
                for (int t = 0; t < arity && ok; ++t) {
                    int sign = (sv >> t) & 1 ? -1 : 1;
                    auto ns = ub.step(bt[static_cast<size_t>(t)], sym.digits[static_cast<size_t>(t)], sign);
                    if (!ns)
                        ok = false;
                    else
                        nbt[static_cast<size_t>(t)] = *ns;
                }
                if (ok) out.add_transition(from, sym, get(sv, 1, std::move(nbt)));
            }
        } else {
            for (const auto& sym : alpha.symbols()) {
                if (sym.star) continue;
                std::vector<int> nbt(static_cast<size_t>(arity));
                bool ok = true;
                for (int t = 0; t < arity && ok; ++t) {
                    int sign = (sv >> t) & 1 ? -1 : 1;
                    auto ns = ub.step(bt[static_cast<size_t>(t)], sym.digits[static_cast<size_t>(t)], sign);
                    if (!ns)
                        ok = false;
                    else
                        nbt[static_cast<size_t>(t)] = *ns;
                }
                if (ok) out.add_transition(from, sym, get(sv, 2, std::move(nbt)));
            }
        }
    }
    out.set_initial(inits);
    out.finalize();
    return {base, arity, reduce(out), PaddingMode::zero_padded};
}

inline RealSetAutomaton universe(const BasePtr& base, int arity) {
    static std::map<std::pair<const BaseProfile*, int>, RealSetAutomaton> cache;
    auto key = std::make_pair(base.get(), arity);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, universe_uncached(base, arity)).first;
    return it->second;
}

enum class LinearRel { EQ, LT, LE };

/// Deterministic weak "balance" automaton for the affine constraint
/// sum_t coeff_t * x_t + c0  (rel)  0 over the tracks of a pointed word.
/// State = exact partial sum aligned at the read position, pruned by the
/// Berend-Frougny bound digit_sum/(beta-1); finiteness needs a Pisot base.
inline BuchiAutomaton linear_atom(const BaseProfile& base, int arity,
                                  const std::vector<FieldElement>& coeffs,
                                  const FieldElement& c0, LinearRel rel,
                                  size_t state_cap = 200000) {
    if (static_cast<int>(coeffs.size()) != arity) throw std::invalid_argument("coefficient count != arity");
    Alphabet alpha = signed_tuple_alphabet(base, arity);
    FieldElement beta = base.beta;
    // digit-sum bound E and tail bound T = E/(beta-1)
    FieldElement e_bound = FieldElement::zero(base.field);
    for (const auto& c : coeffs) e_bound = e_bound + c.abs() * Rat(base.max_digit);
    FieldElement t_bound = e_bound * (beta - Rat(1)).inverse();
    FieldElement m_bound = c0.abs();
    FieldElement int_bound = t_bound + m_bound;

    BuchiAutomaton out(alpha);
    // phases: 0 = integer side, 1 = fractional side
    std::map<std::pair<FieldElement, int>, int> id;
    std::deque<std::pair<FieldElement, int>> work;
    bool want_neg_sink = rel != LinearRel::EQ;
    int neg_pre = -1, neg_post = -1;
    if (want_neg_sink) {
        neg_pre = out.add_state(false);
        neg_post = out.add_state(true);
        for (const auto& sym : alpha.symbols()) {
            if (sym.star) {
                out.add_transition(neg_pre, sym, neg_post);
            } else {
                out.add_transition(neg_pre, sym, neg_pre);
                out.add_transition(neg_post, sym, neg_post);
            }
        }
    }
    auto get = [&](const FieldElement& s, int phase) {
        auto key = std::make_pair(s, phase);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        if (id.size() >= state_cap) throw std::runtime_error("linear atom state cap exceeded (non-Pisot base?)");
        bool acc = phase == 1 && (rel == LinearRel::EQ || rel == LinearRel::LE);
        int st = out.add_state(acc);
        id.emplace(key, st);
        work.push_back(key);
        return st;
    };
    int start = get(FieldElement::zero(base.field), 0);
    while (!work.empty()) {
        auto [s, phase] = work.front();
        work.pop_front();
        int from = id[{s, phase}];
        FieldElement bound = phase == 0 ? int_bound : t_bound;
        for (const auto& sym : alpha.symbols()) {
            if (sym.star) {
                if (phase != 0) continue;
                FieldElement s2 = s + c0;
                if (s2.abs().compare(t_bound) <= 0) {
                    out.add_transition(from, sym, get(s2, 1));
                } else if (want_neg_sink && s2.sign() < 0) {
                    out.add_transition(from, sym, neg_post);
                }
                continue;
            }
            FieldElement s2 = s * beta;
            for (int t = 0; t < arity; ++t)
                s2 = s2 + coeffs[static_cast<size_t>(t)] * Rat(sym.digits[static_cast<size_t>(t)]);
            if (s2.abs().compare(bound) <= 0) {
                out.add_transition(from, sym, get(s2, phase));
            } else if (want_neg_sink && s2.sign() < 0) {
                out.add_transition(from, sym, phase == 0 ? neg_pre : neg_post);
            }
        }
    }
    out.set_initial({start});
    out.finalize();
    return out;
}

/// Integer-coefficient convenience wrapper.
inline BuchiAutomaton linear_atom_int(const BaseProfile& base, int arity,
                                      const std::vector<long>& coeffs, const Rat& c0,
                                      LinearRel rel) {
    std::vector<FieldElement> cf;
    for (long c : coeffs) cf.push_back(FieldElement::from_rat(base.field, Rat(c)));
    return linear_atom(base, arity, cf, FieldElement::from_rat(base.field, c0), rel);
}

namespace detail {

inline void check_compatible(const RealSetAutomaton& a, const RealSetAutomaton& b) {
    if (!(*a.base == *b.base)) throw std::invalid_argument("set automata over different bases");
    if (a.arity != b.arity) throw std::invalid_argument("set automata of different arity");
}

}  // namespace detail

inline RealSetAutomaton canonical_pad(const RealSetAutomaton& x, PaddingMode target);

/// 0*-closure plus leading-zero quotient: the canonical zero-padded form
/// {0^j w : some padding of w accepted}, intersected back with the universe.
inline BuchiAutomaton zero_pad_normalize(const BasePtr& base, int arity, const BuchiAutomaton& m) {
    m.finalize();
    Symbol zt = Symbol::tuple(std::vector<Digit>(static_cast<size_t>(arity), 0));
    // quotient: everything reachable from initials via zero-tuples is initial
    std::vector<int> inits = m.initial;
    {
        std::set<int> seen(inits.begin(), inits.end());
        std::deque<int> work(inits.begin(), inits.end());
        auto zid = m.alphabet.find(zt);
        while (zid && !work.empty()) {
            int q = work.front();
            work.pop_front();
            for (int t : m.post(q, *zid))
                if (!seen.count(t)) {
                    seen.insert(t);
                    work.push_back(t);
                }
        }
        inits.assign(seen.begin(), seen.end());
    }
    BuchiAutomaton closed = m;
    // fresh zero-looping initial feeding every quotient-initial's transitions
    int z = closed.add_state(false);
    closed.add_transition(z, zt, z);
    for (int q : inits) {
        auto [lo, hi] = m.out_range(q);
        for (size_t e = lo; e < hi; ++e)
            closed.add_transition(z, m.alphabet.at(m.transitions[e].sym), m.transitions[e].to);
    }
    std::vector<int> ni = inits;
    ni.push_back(z);
    closed.set_initial(ni);
    closed.finalize();
    auto u = universe(base, arity);
    return reduce(intersect(closed, u.machine));
}

/// Filter keeping only exactly-padded words: first symbol a nonzero tuple,
/// or the zero tuple immediately followed by star.
inline BuchiAutomaton exact_padding_filter(const BaseProfile& base, int arity) {
    Alphabet alpha = signed_tuple_alphabet(base, arity);
    BuchiAutomaton f(alpha);
    int s0 = f.add_state(false), sz = f.add_state(false), pass = f.add_state(true);
    Symbol zt = Symbol::tuple(std::vector<Digit>(static_cast<size_t>(arity), 0));
    for (const auto& sym : alpha.symbols()) {
        if (sym.star) continue;
        if (sym == zt)
            f.add_transition(s0, sym, sz);
        else
            f.add_transition(s0, sym, pass);
        f.add_transition(pass, sym, pass);
    }
    f.add_transition(sz, Symbol::star_sym(), pass);
    f.add_transition(pass, Symbol::star_sym(), pass);
    f.set_initial({s0});
    f.finalize();
    return f;
}

inline RealSetAutomaton canonical_pad(const RealSetAutomaton& x, PaddingMode target) {
    if (x.mode == target) return x;
    if (target == PaddingMode::zero_padded)
        return {x.base, x.arity, zero_pad_normalize(x.base, x.arity, x.machine),
                PaddingMode::zero_padded};
    // exact: normalize padding first, then filter
    BuchiAutomaton zp = x.mode == PaddingMode::zero_padded
                            ? x.machine
                            : zero_pad_normalize(x.base, x.arity, x.machine);
    auto filt = exact_padding_filter(*x.base, x.arity);
    return {x.base, x.arity, reduce(intersect(zp, filt)), PaddingMode::exact};
}

inline RealSetAutomaton intersect_sets(const RealSetAutomaton& a0, const RealSetAutomaton& b0) {
    detail::check_compatible(a0, b0);
    auto a = canonical_pad(a0, PaddingMode::zero_padded);
    auto b = canonical_pad(b0, PaddingMode::zero_padded);
    return {a.base, a.arity, reduce(intersect(a.machine, b.machine)), PaddingMode::zero_padded};
}

inline RealSetAutomaton union_sets(const RealSetAutomaton& a0, const RealSetAutomaton& b0) {
    detail::check_compatible(a0, b0);
    auto a = canonical_pad(a0, PaddingMode::zero_padded);
    auto b = canonical_pad(b0, PaddingMode::zero_padded);
    return {a.base, a.arity, reduce(union_automaton(a.machine, b.machine)), PaddingMode::zero_padded};
}

/// Complement within the universe (the raw complement accepts words that
/// violate the star/sign format).
inline RealSetAutomaton complement_set(const RealSetAutomaton& x0, size_t cap = 1000000) {
    auto x = canonical_pad(x0, PaddingMode::zero_padded);
    auto u = universe(x.base, x.arity);
    auto comp = complement(reduce(x.machine), cap);
    return {x.base, x.arity, reduce(intersect(comp, u.machine)), PaddingMode::zero_padded};
}

/// Existential projection onto the listed tracks; padding renormalized (the
/// deleted track may have forced extra leading zeroes on the survivors).
inline RealSetAutomaton project_set(const RealSetAutomaton& x0, const std::vector<int>& keep) {
    auto x = canonical_pad(x0, PaddingMode::zero_padded);
    auto p = project(x.machine, keep);
    return {x.base, static_cast<int>(keep.size()),
            zero_pad_normalize(x.base, static_cast<int>(keep.size()), p), PaddingMode::zero_padded};
}

/// Value saturation: all format words whose track values match some accepted
/// word's values. Used to restore value-consistency after word-level
/// constructions (e.g. the fractional-zeroes filter of beta_integers).
inline RealSetAutomaton saturate_set(const RealSetAutomaton& x0) {
    auto x = canonical_pad(x0, PaddingMode::zero_padded);
    int n = x.arity;
    // pair automaton over 2n tracks: track i of the output equals track n+i
    BuchiAutomaton rel = linear_atom_int(*x.base, 2 * n,
                                         [&] {
                                             std::vector<long> c(static_cast<size_t>(2 * n), 0);
                                             c[0] = 1;
                                             c[static_cast<size_t>(n)] = -1;
                                             return c;
                                         }(),
                                         Rat(0), LinearRel::EQ);
    for (int i = 1; i < n; ++i) {
        std::vector<long> c(static_cast<size_t>(2 * n), 0);
        c[static_cast<size_t>(i)] = 1;
        c[static_cast<size_t>(n + i)] = -1;
        rel = reduce(intersect(rel, linear_atom_int(*x.base, 2 * n, c, Rat(0), LinearRel::EQ)));
    }
    // product: rel x (U on lower tracks) x (x.machine on upper tracks)
    auto u2n = universe(x.base, 2 * n);
    // cylindrify x.machine to the upper tracks
    BuchiAutomaton xc(u2n.machine.alphabet);
    {
        const BuchiAutomaton& m = x.machine;
        m.finalize();
        for (int q = 0; q < m.num_states; ++q) xc.add_state(m.accepting[static_cast<size_t>(q)]);
        for (const auto& t : m.transitions) {
            const Symbol& s = m.alphabet.at(t.sym);
            if (s.star) {
                xc.add_transition(t.from, Symbol::star_sym(), t.to);
            } else {
                // every extension on the lower tracks
                for (const auto& full : xc.alphabet.symbols()) {
                    if (full.star) continue;
                    bool match = true;
                    for (int i = 0; i < n && match; ++i)
                        match = full.digits[static_cast<size_t>(n + i)] == s.digits[static_cast<size_t>(i)];
                    if (match) xc.add_transition(t.from, full, t.to);
                }
            }
        }
        xc.set_initial(m.initial);
        xc.finalize();
    }
    auto prod = reduce(intersect(reduce(intersect(rel, u2n.machine)), xc));
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) keep.push_back(i);
    auto projected = project(prod, keep);
    return {x.base, n, zero_pad_normalize(x.base, n, projected), PaddingMode::zero_padded};
}

/// Cylindrification: re-embed an automaton over `src_tracks` of a wider
/// tuple, leaving the new tracks unconstrained (intersect with the universe
/// afterwards to restore the format).
inline BuchiAutomaton cylindrify(const BuchiAutomaton& m, int full_arity,
                                 const std::vector<int>& src_tracks, int maxd) {
    m.finalize();
    Alphabet alpha = Alphabet::full_signed(full_arity, maxd);
    BuchiAutomaton out(alpha);
    for (int q = 0; q < m.num_states; ++q) out.add_state(m.accepting[static_cast<size_t>(q)]);
    for (const auto& t : m.transitions) {
        const Symbol& s = m.alphabet.at(t.sym);
        if (s.star) {
            out.add_transition(t.from, Symbol::star_sym(), t.to);
            continue;
        }
        for (const auto& full : alpha.symbols()) {
            if (full.star) continue;
            bool match = true;
            for (size_t i = 0; i < src_tracks.size() && match; ++i)
                match = full.digits[static_cast<size_t>(src_tracks[i])] == s.digits[i];
            if (match) out.add_transition(t.from, full, t.to);
        }
    }
    out.set_initial(m.initial);
    out.finalize();
    return out;
}

/// beta-integers Z_beta^n: universe meet zero fractional part, saturated so
/// that every representation of an integer point is accepted.
inline RealSetAutomaton beta_integers(const BasePtr& base, int arity) {
    auto u = universe(base, arity);
    Alphabet alpha = signed_tuple_alphabet(*base, arity);
    BuchiAutomaton zf(alpha);
    int pre = zf.add_state(false), post = zf.add_state(true);
    Symbol zt = Symbol::tuple(std::vector<Digit>(static_cast<size_t>(arity), 0));
    for (const auto& sym : alpha.symbols()) {
        if (sym.star)
            zf.add_transition(pre, sym, post);
        else
            zf.add_transition(pre, sym, pre);
    }
    zf.add_transition(post, zt, post);
    zf.set_initial({pre});
    zf.finalize();
    RealSetAutomaton words{base, arity, reduce(intersect(u.machine, zf)), PaddingMode::zero_padded};
    return saturate_set(words);
}

/// Strict order {(x,y) : x < y} as an exact balance automaton (x - y < 0)
/// within the two-track universe; value-correct on every representation.
inline RealSetAutomaton order_relation(const BasePtr& base) {
    auto u = universe(base, 2);
    auto lt = linear_atom_int(*base, 2, {1, -1}, Rat(0), LinearRel::LT);
    return {base, 2, reduce(intersect(lt, u.machine)), PaddingMode::zero_padded};
}

/// Addition relation {(x,y,z) : x + y = z}.
inline RealSetAutomaton add_relation(const BasePtr& base) {
    if (!base->pisot) throw std::domain_error("add_relation requires a Pisot base");
    auto u = universe(base, 3);
    auto eq = linear_atom_int(*base, 3, {1, 1, -1}, Rat(0), LinearRel::EQ);
    return {base, 3, reduce(intersect(eq, u.machine)), PaddingMode::zero_padded};
}

/// Multiplication of the set by beta (up) or 1/beta (down): the star moves
/// one position; stream admissibility is star-position independent. Result
/// is returned zero-padded.
inline RealSetAutomaton shift_by_base(const RealSetAutomaton& x0, bool up) {
    auto x = canonical_pad(x0, PaddingMode::zero_padded);
    const BuchiAutomaton& m = x.machine;
    m.finalize();
    Symbol star = Symbol::star_sym();
    BuchiAutomaton out(m.alphabet);
    // up: output word has the star one later; simulate m where the digit read
    // now is the one m reads after its star. state (q, pending digit symbol)
    // entered when guessing the star comes next.
    for (int q = 0; q < m.num_states; ++q) out.add_state(m.accepting[static_cast<size_t>(q)]);
    std::map<std::pair<int, int>, int> pend;  // (state of m after star, digit sym) -> out state
    auto star_id = m.alphabet.find(star);
    if (!star_id) throw std::invalid_argument("machine has no star transitions");
    if (up) {
        for (int q = 0; q < m.num_states; ++q) {
            auto [lo, hi] = m.out_range(q);
            for (size_t e = lo; e < hi; ++e) {
                const auto& t = m.transitions[e];
                if (m.alphabet.at(t.sym).star) continue;
                out.add_transition_idx(q, t.sym, t.to);  // plain int/frac moves
            }
            // guess: m does star here, then digit d; we emit d then star
            for (int qs : m.post(q, *star_id)) {
                auto [lo2, hi2] = m.out_range(qs);
                for (size_t e2 = lo2; e2 < hi2; ++e2) {
                    const auto& t2 = m.transitions[e2];
                    if (m.alphabet.at(t2.sym).star) continue;
                    auto key = std::make_pair(t2.to, 0);
                    auto it = pend.find(key);
                    int ps;
                    if (it == pend.end()) {
                        ps = out.add_state(false);
                        pend.emplace(key, ps);
                        out.add_transition_idx(ps, *star_id, t2.to);
                    } else {
                        ps = it->second;
                    }
                    out.add_transition_idx(q, t2.sym, ps);
                }
            }
        }
        out.set_initial(m.initial);
    } else {
        // down: output star one earlier: we emit star then digit d where m
        // emits digit d then star
        for (int q = 0; q < m.num_states; ++q) {
            auto [lo, hi] = m.out_range(q);
            for (size_t e = lo; e < hi; ++e) {
                const auto& t = m.transitions[e];
                if (m.alphabet.at(t.sym).star) continue;
                out.add_transition_idx(q, t.sym, t.to);
            }
            // m: q -d-> r -star-> s ; output: q -star-> (pending d at r) -d-> s
            auto [lo3, hi3] = m.out_range(q);
            for (size_t e = lo3; e < hi3; ++e) {
                const auto& t = m.transitions[e];
                if (m.alphabet.at(t.sym).star) continue;
                for (int s2 : m.post(t.to, *star_id)) {
                    int ps = out.add_state(false);
                    out.add_transition_idx(q, *star_id, ps);
                    out.add_transition_idx(ps, t.sym, s2);
                }
            }
        }
        out.set_initial(m.initial);
    }
    out.finalize();
    return {x.base, x.arity, zero_pad_normalize(x.base, x.arity, out), PaddingMode::zero_padded};
}

/// Synchronized expansions of a tuple of points: common star position via
/// leading zeroes, per the paper's convention (all-fractional points start
/// with the zero tuple).
inline std::vector<PointedWord> synchronize(const BasePtr& base,
                                            const std::vector<FieldElement>& pts,
                                            bool quasi = false) {
    std::vector<PointedWord> ws;
    size_t len = 1;
    for (const auto& p : pts) {
        ws.push_back(quasi ? quasi_greedy_expand(p, *base) : greedy_expand(p, *base));
        len = std::max(len, ws.back().int_part.size());
    }
    for (auto& w : ws) {
        std::vector<Digit> ip(len - w.int_part.size(), 0);
        ip.insert(ip.end(), w.int_part.begin(), w.int_part.end());
        w.int_part = std::move(ip);
    }
    return ws;
}

inline SymbolWord tuple_word(const std::vector<PointedWord>& ws) {
    size_t n = ws.size();
    size_t ilen = ws[0].int_part.size();
    for (const auto& w : ws)
        if (w.int_part.size() != ilen) throw std::invalid_argument("unsynchronized integer parts");
    std::vector<Symbol> prefix;
    for (size_t i = 0; i < ilen; ++i) {
        std::vector<Digit> d;
        for (const auto& w : ws) d.push_back(w.int_part[i]);
        prefix.push_back(Symbol::tuple(std::move(d)));
    }
    prefix.push_back(Symbol::star_sym());
    size_t plen = 0, period = 1;
    for (const auto& w : ws) {
        plen = std::max(plen, w.frac.pre.size());
        period = std::lcm(period, w.frac.per.size());
    }
    for (size_t i = 0; i < plen; ++i) {
        std::vector<Digit> d;
        for (const auto& w : ws) d.push_back(w.frac.at(i));
        prefix.push_back(Symbol::tuple(std::move(d)));
    }
    std::vector<Symbol> loop;
    for (size_t i = 0; i < period; ++i) {
        std::vector<Digit> d;
        for (const auto& w : ws) d.push_back(w.frac.at(plen + i));
        loop.push_back(Symbol::tuple(std::move(d)));
    }
    return SymbolWord(std::move(prefix), std::move(loop));
}

/// Decides p in X via the synchronized greedy expansions.
inline bool member(const RealSetAutomaton& x, const std::vector<FieldElement>& p) {
    if (static_cast<int>(p.size()) != x.arity) throw std::invalid_argument("point arity mismatch");
    auto ws = synchronize(x.base, p);
    return accepts(x.machine, tuple_word(ws));
}

// ---- digit predicate machinery ----

namespace detail {

/// Greedy expansions of the positive powers of beta, zero-padded:
/// 0^* 1 0^i * 0^w  and  0^* 0 * 0^j 1 0^w.
inline BuchiAutomaton greedy_powers_automaton(const BaseProfile& base, int arity, int track) {
    Alphabet alpha = signed_tuple_alphabet(base, arity);
    BuchiAutomaton f(alpha);
    int s0 = f.add_state(false);   // leading zeros
    int s1 = f.add_state(false);   // int 1 seen
    int s2 = f.add_state(true);    // frac zeros after int 1
    int s3 = f.add_state(false);   // star seen, awaiting frac 1
    int s4 = f.add_state(true);    // frac 1 seen
    auto dig = [&](const Symbol& s) { return s.digits[static_cast<size_t>(track)]; };
    for (const auto& sym : alpha.symbols()) {
        if (sym.star) continue;
        if (dig(sym) == 0) {
            f.add_transition(s0, sym, s0);
            f.add_transition(s1, sym, s1);
            f.add_transition(s2, sym, s2);
            f.add_transition(s3, sym, s3);
            f.add_transition(s4, sym, s4);
        } else if (dig(sym) == 1) {
            f.add_transition(s0, sym, s1);
            f.add_transition(s3, sym, s4);
        }
    }
    f.add_transition(s1, Symbol::star_sym(), s2);
    f.add_transition(s0, Symbol::star_sym(), s3);
    f.set_initial({s0});
    f.finalize();
    return f;
}

/// Literal alignment: y-track is a greedy power word (position e of its 1);
/// q-track has zero digits at every position <= e and nonnegative digits
/// elsewhere (q a nonnegative multiple of beta^{e+1} in greedy form).
inline BuchiAutomaton lit_aligned_automaton(const BaseProfile& base, int arity, int q_track,
                                            int y_track) {
    Alphabet alpha = signed_tuple_alphabet(base, arity);
    BuchiAutomaton f(alpha);
    int f0 = f.add_state(false);  // int phase, y 1 not yet seen
    int f1 = f.add_state(false);  // int phase, y 1 seen (q zero from here on)
    int g0 = f.add_state(false);  // frac phase, y 1 not yet seen
    int g1 = f.add_state(true);   // frac phase, y 1 seen
    auto qd = [&](const Symbol& s) { return s.digits[static_cast<size_t>(q_track)]; };
    auto yd = [&](const Symbol& s) { return s.digits[static_cast<size_t>(y_track)]; };
    for (const auto& sym : alpha.symbols()) {
        if (sym.star) continue;
        Digit q = qd(sym), y = yd(sym);
        if (q < 0) continue;  // q >= 0 in greedy form
        if (y == 0) {
            f.add_transition(f0, sym, f0);
            f.add_transition(g0, sym, g0);
            if (q == 0) {
                f.add_transition(f1, sym, f1);
                f.add_transition(g1, sym, g1);
            }
        } else if (y == 1 && q == 0) {
            f.add_transition(f0, sym, f1);
            f.add_transition(g0, sym, g1);
        }
    }
    f.add_transition(f0, Symbol::star_sym(), g0);
    f.add_transition(f1, Symbol::star_sym(), g1);
    f.set_initial({f0});
    f.finalize();
    return f;
}

/// Negate the digits of one track (x -> -x on that component).
inline BuchiAutomaton negate_track(const BuchiAutomaton& m, int track) {
    m.finalize();
    BuchiAutomaton out(Alphabet(m.alphabet.arity()));
    for (int q = 0; q < m.num_states; ++q) out.add_state(m.accepting[static_cast<size_t>(q)]);
    for (const auto& t : m.transitions) {
        Symbol s = m.alphabet.at(t.sym);
        if (!s.star) s.digits[static_cast<size_t>(track)] = -s.digits[static_cast<size_t>(track)];
        out.add_transition(t.from, s, t.to);
    }
    out.set_initial(m.initial);
    out.finalize();
    return out;
}

}  // namespace detail

/// All-representation automaton of {beta^e : e in Z} on one track.
inline RealSetAutomaton power_set_automaton(const BasePtr& base) {
    auto u2 = universe(base, 2);
    auto eq = linear_atom_int(*base, 2, {1, -1}, Rat(0), LinearRel::EQ);
    auto gp = detail::greedy_powers_automaton(*base, 2, 1);
    auto prod = reduce(intersect(reduce(intersect(eq, u2.machine)), gp));
    auto p = project(prod, {0});
    return {base, 1, zero_pad_normalize(base, 1, p), PaddingMode::zero_padded};
}

/// X_{beta,a}: pairs (x, y) with y an integral power of beta and digit a at
/// that position of d_beta(x) (including the |x| < y and a = 0 clause).
/// Compiled from the value characterization of greedy prefixes: p is the
/// greedy prefix of x above position e iff p is the largest element of
/// beta^{e+1} Z_beta^{>=0} below or equal to x.
inline RealSetAutomaton digit_predicate(const BasePtr& base, Digit a, size_t cap = 1000000);

namespace detail {

/// Core of the digit predicate for x >= 0 and digit value a >= 0, built on
/// tracks (x, y) with a literal greedy power word on track y.
inline BuchiAutomaton digit_core_nonneg(const BasePtr& base, Digit a, size_t cap) {
    // tracks in the working tuple: 0 = x, 1 = y (literal), 2 = p, 3 = q
    auto u4 = universe(base, 4);
    auto aligned_q = lit_aligned_automaton(*base, 4, 3, 1);
    auto q_le_x = linear_atom_int(*base, 4, {-1, 0, 0, 1}, Rat(0), LinearRel::LE);
    auto p_lt_q = linear_atom_int(*base, 4, {0, 0, 1, -1}, Rat(0), LinearRel::LT);
    auto bigger = reduce(intersect(reduce(intersect(aligned_q, q_le_x)),
                                   reduce(intersect(p_lt_q, u4.machine))));
    auto exists_bigger = zero_pad_normalize(base, 3, project(bigger, {0, 1, 2}));
    auto u3 = universe(base, 3);
    auto no_bigger = reduce(intersect(complement(reduce(exists_bigger), cap), u3.machine));
    auto aligned_p = lit_aligned_automaton(*base, 3, 2, 1);
    auto p_le_x = linear_atom_int(*base, 3, {-1, 0, 1}, Rat(0), LinearRel::LE);
    // digit window: p + a y <= x < p + (a+1) y
    auto lo = linear_atom_int(*base, 3, {-1, a, 1}, Rat(0), LinearRel::LE);
    auto hi = linear_atom_int(*base, 3, {1, -(a + 1l), -1}, Rat(0), LinearRel::LT);
    auto core = reduce(intersect(reduce(intersect(aligned_p, p_le_x)),
                                 reduce(intersect(no_bigger, reduce(intersect(lo, hi))))));
    return zero_pad_normalize(base, 2, project(core, {0, 1}));
}

}  // namespace detail

inline RealSetAutomaton digit_predicate(const BasePtr& base, Digit a, size_t cap) {
    if (a < -base->max_digit || a > base->max_digit)
        throw std::invalid_argument("digit outside the signed alphabet");
    // branch on the literal power track (y'), then saturate y' into all
    // representations of y at the very end
    BuchiAutomaton branch(signed_tuple_alphabet(*base, 2));
    bool have = false;
    auto add_branch = [&](const BuchiAutomaton& m) {
        branch = have ? union_automaton(branch, m) : m;
        have = true;
    };
    if (a >= 0) add_branch(detail::digit_core_nonneg(base, a, cap));
    if (a <= 0) {
        // negative x: digits of d(x) are the negated digits of d(-x)
        auto pos = detail::digit_core_nonneg(base, static_cast<Digit>(-a), cap);
        auto neg = detail::negate_track(pos, 0);
        if (a == 0) {
            // avoid double-counting x = 0 (harmless for the language: union)
        }
        add_branch(neg);
    }
    if (a == 0) {
        // |x| < y clause
        auto u2 = universe(base, 2);
        auto gp = detail::greedy_powers_automaton(*base, 2, 1);
        auto lt1 = linear_atom_int(*base, 2, {1, -1}, Rat(0), LinearRel::LT);   // x < y
        auto lt2 = linear_atom_int(*base, 2, {-1, -1}, Rat(0), LinearRel::LT);  // -x < y
        auto small = reduce(intersect(reduce(intersect(lt1, lt2)),
                                      reduce(intersect(gp, u2.machine))));
        add_branch(small);
    }
    // saturate the y track: replace the literal power word by any
    // representation of the same value
    RealSetAutomaton lit{base, 2, reduce(branch), PaddingMode::zero_padded};
    return saturate_set(lit);
}

}  // namespace betarec
