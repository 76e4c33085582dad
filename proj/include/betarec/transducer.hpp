#pragma once

#include "betarec/real_sets.hpp"

namespace betarec {

/// Letter-to-letter transducer over pointed digit words. Initial behaviour is
/// either plain initial states or a partial initial function alpha mapping a
/// state to a pending output prefix (with empty input), as in the Frougny
/// normalizer.
struct LetterTransducer {
    struct Trans {
        int from;
        int in_sym;
        int out_sym;
        int to;
        bool operator<(const Trans& o) const {
            return std::tie(from, in_sym, out_sym, to) < std::tie(o.from, o.in_sym, o.out_sym, o.to);
        }
    };

    Alphabet in_alpha, out_alpha;
    int num_states = 0;
    std::vector<Trans> transitions;
    std::vector<int> initial;
    std::map<int, std::vector<Symbol>> alpha_fn;  // initial function
    std::vector<bool> accepting;
    std::vector<FieldElement> state_values;  // converter balance per state (optional)

    int add_state(bool acc) {
        accepting.push_back(acc);
        return num_states++;
    }
    void add_transition(int from, const Symbol& in, const Symbol& out, int to) {
        transitions.push_back({from, in_alpha.add(in), out_alpha.add(out), to});
    }
    void sort_transitions() {
        std::sort(transitions.begin(), transitions.end());
        transitions.erase(std::unique(transitions.begin(), transitions.end(),
                                      [](const Trans& a, const Trans& b) {
                                          return a.from == b.from && a.in_sym == b.in_sym &&
                                                 a.out_sym == b.out_sym && a.to == b.to;
                                      }),
                          transitions.end());
    }
};

namespace detail {

/// Strict admissibility acceptor: Bertrand walk plus a "last step dropped"
/// bit; acceptance = drops infinitely often. Accepts exactly the greedy
/// fractional expansions (shift-maximality of d* makes the reset sound).
inline BuchiAutomaton bertrand_strict(const BaseProfile& base) {
    auto star = renyi_star(base);
    int m = static_cast<int>(star.pre.size()), p = static_cast<int>(star.per.size());
    int n = m + p;
    BuchiAutomaton out(Alphabet(1));
    // state 2i = (i, bit 0), 2i+1 = (i, bit 1)
    for (int i = 0; i < n; ++i) {
        out.add_state(false);
        out.add_state(true);
    }
    for (int i = 0; i < n; ++i) {
        Digit t = star.at(static_cast<size_t>(i));
        int next = i + 1 < n ? i + 1 : m;
        for (int bit = 0; bit < 2; ++bit) {
            out.add_transition(2 * i + bit, Symbol::single(t), 2 * next);
            for (Digit d = 0; d < t; ++d) out.add_transition(2 * i + bit, Symbol::single(d), 1);
        }
    }
    out.set_initial({0});
    out.finalize();
    return out;
}

}  // namespace detail

/// Frougny's fractional converter for (base, C = {-c..c}): breadth-first
/// closure from balance 0 under r -> beta r + a - b within the bound
/// (c + max A_beta)/(beta - 1). All states accepting; state_values carry the
/// exact balances. This is the pre-product machine of the paper's figure.
inline LetterTransducer build_fractional_converter_core(const BasePtr& base, int c,
                                                        size_t cap = 100000) {
    if (!base->pisot) throw std::domain_error("Frougny converter requires a Pisot base");
    if (c < 1) throw std::invalid_argument("alphabet bound must be >= 1");
    LetterTransducer t;
    t.in_alpha = Alphabet(1);
    t.out_alpha = Alphabet(1);
    FieldElement beta = base->beta;
    // viability: a balance r completes to 0 iff r = (output tail) - (input
    // tail) for some digit tails, i.e. r in [-c/(beta-1), (c+maxd)/(beta-1)];
    // this asymmetric interval reproduces the paper's state set exactly
    FieldElement binv1 = (beta - Rat(1)).inverse();
    FieldElement lo_bound = -(base->elem(Rat(c)) * binv1);
    FieldElement hi_bound = (base->elem(Rat(c)) + base->elem(Rat(base->max_digit))) * binv1;
    std::map<FieldElement, int> id;
    std::deque<FieldElement> work;
    auto get = [&](const FieldElement& r) {
        auto it = id.find(r);
        if (it != id.end()) return it->second;
        if (id.size() >= cap) throw std::runtime_error("converter state cap exceeded");
        int s = t.add_state(true);
        t.state_values.push_back(r);
        id.emplace(r, s);
        work.push_back(r);
        return s;
    };
    int start = get(base->zero());
    while (!work.empty()) {
        FieldElement r = work.front();
        work.pop_front();
        int from = id[r];
        for (int a = -c; a <= c; ++a) {
            for (int b = 0; b <= base->max_digit; ++b) {
                FieldElement s = r * beta + Rat(a - b);
                if (lo_bound.compare(s) <= 0 && s.compare(hi_bound) <= 0)
                    t.add_transition(from, Symbol::single(a), Symbol::single(b), get(s));
            }
        }
    }
    t.initial = {start};
    t.sort_transitions();
    return t;
}

/// The full fractional normalizer nu_{beta,C,frac}: the converter composed
/// with the strict admissibility acceptor on the output side, so each input
/// has the unique greedy output.
inline LetterTransducer build_fractional_converter(const BasePtr& base, int c) {
    LetterTransducer core = build_fractional_converter_core(base, c);
    BuchiAutomaton adm = detail::bertrand_strict(*base);
    LetterTransducer t;
    t.in_alpha = core.in_alpha;
    t.out_alpha = core.out_alpha;
    std::map<std::pair<int, int>, int> id;
    std::deque<std::pair<int, int>> work;
    auto get = [&](int q, int d) {
        auto key = std::make_pair(q, d);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = t.add_state(adm.accepting[static_cast<size_t>(d)]);
        t.state_values.push_back(core.state_values[static_cast<size_t>(q)]);
        id.emplace(key, s);
        work.push_back(key);
        return s;
    };
    int start = get(core.initial[0], adm.initial[0]);
    while (!work.empty()) {
        auto [q, d] = work.front();
        work.pop_front();
        int from = id[{q, d}];
        for (const auto& tr : core.transitions) {
            if (tr.from != q) continue;
            const Symbol& out_sym = core.out_alpha.at(tr.out_sym);
            auto did = adm.alphabet.find(out_sym);
            if (!did) continue;
            for (int d2 : adm.post(d, *did))
                t.add_transition(from, core.in_alpha.at(tr.in_sym), out_sym, get(tr.to, d2));
        }
    }
    t.initial = {start};
    t.sort_transitions();
    return t;
}

/// Length surplus bound K of the pointed normalizer's initial function:
/// val(u) <= c beta^{k+1}/(beta-1) for inputs with top position k, so
/// ell - k <= floor(log_beta(c/(beta-1))) + 1. (The paper states the bound
/// without the +1, but its own example 1*1^w -> 100*0^w needs surplus 2.)
inline int normalizer_k_bound(const BasePtr& base, int c) {
    FieldElement limit = base->elem(Rat(c)) * base->beta * (base->beta - Rat(1)).inverse();
    int k = 0;
    FieldElement pw = base->beta;
    while (pw.compare(limit) <= 0) {
        ++k;
        pw = pw * base->beta;
    }
    return k;
}

/// The pointed normalizer nu_{beta,C}: two copies of the fractional machine
/// (integer and fractional sides) bridged by (star|star), one such pair per
/// sign, plus the initial function alpha covering outputs longer than inputs.
inline LetterTransducer build_normalizer(const BasePtr& base, int c) {
    if (!base->pisot) throw std::domain_error("normalization requires a Pisot base");
    LetterTransducer core = build_fractional_converter_core(base, c);
    BuchiAutomaton bert = bertrand_automaton(*base);
    BuchiAutomaton strict = detail::bertrand_strict(*base);

    LetterTransducer t;
    t.in_alpha = Alphabet(1);
    t.out_alpha = Alphabet(1);
    // state key: (sign, phase 0|1, converter state, admissibility state)
    // phase 0 tracks the plain Bertrand walk, phase 1 the strict one
    std::map<std::tuple<int, int, int, int>, int> id;
    std::deque<std::tuple<int, int, int, int>> work;
    auto get = [&](int sign, int phase, int q, int d) {
        auto key = std::make_tuple(sign, phase, q, d);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        bool acc = phase == 1 && strict.accepting[static_cast<size_t>(d)];
        int s = t.add_state(acc);
        FieldElement v = core.state_values[static_cast<size_t>(q)];
        t.state_values.push_back(sign < 0 ? -v : v);
        id.emplace(key, s);
        work.push_back(key);
        return s;
    };
    int init_pos = get(+1, 0, core.initial[0], bert.initial[0]);
    int init_neg = get(-1, 0, core.initial[0], bert.initial[0]);
    while (!work.empty()) {
        auto [sign, phase, q, d] = work.front();
        work.pop_front();
        int from = id[{sign, phase, q, d}];
        if (phase == 0) {
            // star bridge: the admissibility walk continues into the strict
            // copy at the same Bertrand position (stream admissibility is
            // star-position independent); bit starts cleared
            int dstrict = 2 * d;
            t.add_transition(from, Symbol::star_sym(), Symbol::star_sym(),
                             get(sign, 1, q, dstrict));
        }
        const BuchiAutomaton& adm = phase == 0 ? bert : strict;
        for (const auto& tr : core.transitions) {
            if (tr.from != q) continue;
            Digit a = core.in_alpha.at(tr.in_sym).digits[0];
            Digit b = core.out_alpha.at(tr.out_sym).digits[0];
            if (sign < 0) {
                a = -a;
                b = -b;
            }
            // admissibility tracks digit magnitudes
            auto did = adm.alphabet.find(Symbol::single(sign < 0 ? -b : b));
            if (!did) continue;
            for (int d2 : adm.post(d, *did))
                t.add_transition(from, Symbol::single(a), Symbol::single(b), get(sign, phase, tr.to, d2));
        }
    }
    // initial function: states reached on input 0^j with output prefix not
    // starting in 0, for 1 <= j <= K; the Frougny uniqueness remark
    // guarantees one prefix per state
    t.alpha_fn[init_pos] = {};
    t.alpha_fn[init_neg] = {};
    int kb = normalizer_k_bound(base, c);
    if (kb >= 1) {
        struct Item {
            int state;
            std::vector<Symbol> prefix;
        };
        std::vector<Item> frontier{{init_pos, {}}, {init_neg, {}}};
        for (int depth = 1; depth <= kb; ++depth) {
            std::vector<Item> next;
            for (const auto& item : frontier) {
                for (const auto& tr : t.transitions) {
                    if (tr.from != item.state) continue;
                    const Symbol& in = t.in_alpha.at(tr.in_sym);
                    if (in.star || in.digits[0] != 0) continue;
                    Item ni{tr.to, item.prefix};
                    ni.prefix.push_back(t.out_alpha.at(tr.out_sym));
                    next.push_back(std::move(ni));
                }
            }
            for (auto& item : next) {
                if (item.prefix.front().digits[0] == 0) continue;  // shorter alpha path covers it
                auto it = t.alpha_fn.find(item.state);
                if (it != t.alpha_fn.end() && !(it->second == item.prefix) && !it->second.empty())
                    throw std::logic_error("normalizer initial function is not unique");
                if (it == t.alpha_fn.end()) t.alpha_fn.emplace(item.state, item.prefix);
            }
            frontier = std::move(next);
        }
    }
    t.initial.clear();  // behaviour fully described by alpha_fn
    t.sort_transitions();
    return t;
}

/// Replaces the initial function by plain initial states: one shifted copy
/// per pending output prefix, peeling one pending digit per step so the
/// machine stays letter-to-letter.
inline LetterTransducer eliminate_initial_function(const LetterTransducer& t) {
    if (t.alpha_fn.empty()) return t;
    LetterTransducer out;
    out.in_alpha = t.in_alpha;
    out.out_alpha = t.out_alpha;
    // base copy
    for (int q = 0; q < t.num_states; ++q) {
        out.add_state(t.accepting[static_cast<size_t>(q)]);
        if (!t.state_values.empty()) out.state_values.push_back(t.state_values[static_cast<size_t>(q)]);
    }
    for (const auto& tr : t.transitions)
        out.transitions.push_back(tr);
    std::map<std::pair<int, std::vector<Symbol>>, int> shifted;
    std::function<int(int, const std::vector<Symbol>&)> get =
        [&](int q, const std::vector<Symbol>& pending) -> int {
        if (pending.empty()) return q;
        auto key = std::make_pair(q, pending);
        auto it = shifted.find(key);
        if (it != shifted.end()) return it->second;
        int s = out.add_state(t.accepting[static_cast<size_t>(q)]);
        if (!out.state_values.empty() && !t.state_values.empty())
            out.state_values.push_back(t.state_values[static_cast<size_t>(q)]);
        shifted.emplace(key, s);
        // peel: emit pending.front now, queue the actual output
        for (const auto& tr : t.transitions) {
            if (tr.from != q) continue;
            std::vector<Symbol> np(pending.begin() + 1, pending.end());
            np.push_back(t.out_alpha.at(tr.out_sym));
            int to = get(tr.to, np);
            out.transitions.push_back({s, tr.in_sym, out.out_alpha.add(pending.front()), to});
        }
        return s;
    };
    std::vector<int> inits = t.initial;
    for (const auto& [q, prefix] : t.alpha_fn) inits.push_back(get(q, prefix));
    std::sort(inits.begin(), inits.end());
    inits.erase(std::unique(inits.begin(), inits.end()), inits.end());
    out.initial = std::move(inits);
    out.sort_transitions();
    return out;
}

/// Image T(L): Buchi product of the relation with L on the input track,
/// projected to the output track.
inline BuchiAutomaton apply_transducer(const LetterTransducer& t0, const BuchiAutomaton& l,
                                       bool inverse = false) {
    LetterTransducer t = eliminate_initial_function(t0);
    l.finalize();
    BuchiAutomaton out(inverse ? t.in_alpha : t.out_alpha);
    // phase bit alternates between waiting for t-acceptance and l-acceptance
    std::map<std::tuple<int, int, int>, int> id;
    std::deque<std::tuple<int, int, int>> work;
    auto get = [&](int q, int s, int ph) {
        auto key = std::make_tuple(q, s, ph);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int st = out.add_state(ph == 1 && l.accepting[static_cast<size_t>(s)]);
        id.emplace(key, st);
        work.push_back(key);
        return st;
    };
    std::vector<int> inits;
    for (int q : t.initial)
        for (int s : l.initial) inits.push_back(get(q, s, 0));
    while (!work.empty()) {
        auto [q, s, ph] = work.front();
        work.pop_front();
        int from = id[{q, s, ph}];
        for (const auto& tr : t.transitions) {
            if (tr.from != q) continue;
            const Symbol& track = inverse ? t.out_alpha.at(tr.out_sym) : t.in_alpha.at(tr.in_sym);
            const Symbol& emit = inverse ? t.in_alpha.at(tr.in_sym) : t.out_alpha.at(tr.out_sym);
            auto lid = l.alphabet.find(track);
            if (!lid) continue;
            for (int s2 : l.post(s, *lid)) {
                int ph2 = ph;
                if (ph == 0 && t.accepting[static_cast<size_t>(tr.to)]) ph2 = 1;
                if (ph == 1 && l.accepting[static_cast<size_t>(s2)]) ph2 = 0;
                out.add_transition(from, emit, get(tr.to, s2, ph2));
            }
        }
    }
    out.set_initial(inits);
    out.finalize();
    return out;
}

/// Word automaton for a single pointed word over a 1-track alphabet.
inline BuchiAutomaton word_automaton(const PointedWord& w, const Alphabet& alpha) {
    SymbolWord sw = tuple_word({w});
    BuchiAutomaton out(alpha);
    size_t total = sw.prefix.size() + sw.loop.size();
    for (size_t i = 0; i < total; ++i) out.add_state(true);
    for (size_t i = 0; i < total; ++i) {
        size_t next = i + 1 == total ? sw.prefix.size() : i + 1;
        out.add_transition(static_cast<int>(i), sw.at(i), static_cast<int>(next));
    }
    out.set_initial({0});
    out.finalize();
    return out;
}

/// Normalizes one pointed representation over {-c..c} to the expansion of
/// its value; checks the functionality invariant (a unique output word).
inline PointedWord normalize_word(const BasePtr& base, int c, const PointedWord& w) {
    static std::map<std::pair<const BaseProfile*, int>, LetterTransducer> cache;
    auto key = std::make_pair(base.get(), c);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_normalizer(base, c)).first;
    Alphabet in(1);
    for (int d = -c; d <= c; ++d) in.add(Symbol::single(d));
    in.add(Symbol::star_sym());
    auto img = apply_transducer(it->second, word_automaton(w, in));
    auto sw = sample_word(reduce(img));
    if (!sw) throw std::runtime_error("normalizer produced no output (value outside range?)");
    // convert back to a pointed word, dropping leading zeros
    std::vector<Digit> ip;
    std::vector<Digit> pre;
    bool after_star = false;
    for (const auto& s : sw->prefix) {
        if (s.star) {
            after_star = true;
            continue;
        }
        (after_star ? pre : ip).push_back(s.digits[0]);
    }
    if (!after_star) throw std::logic_error("normalized word lost its star");
    std::vector<Digit> per;
    for (const auto& s : sw->loop) per.push_back(s.digits[0]);
    return PointedWord(std::move(ip), EventuallyPeriodicWord(std::move(pre), std::move(per)));
}

/// Base-power rebasing between beta and beta^k (arity 1), following the
/// zeta_k construction: down via the morphic image plus normalization in
/// base beta, up via the L_zeta intersection, projection, zeta-preimage and
/// normalization in base beta^k.
inline RealSetAutomaton rebase_power(const RealSetAutomaton& x, int k, bool to_power) {
    if (x.arity != 1) throw std::invalid_argument("rebase_power implemented for arity 1");
    if (!x.base->pisot) throw std::domain_error("rebase requires a Pisot base");
    if (k < 1) throw std::invalid_argument("power must be >= 1");
    if (k == 1) return x;
    if (to_power) {
        // beta -> beta^k
        auto base = x.base;
        auto base_k = make_power_base(base, k);
        int maxk = base_k->max_digit;
        // L_zeta: (0^{k-1} A)^+ star (0^{k-1} A)^omega over the beta^k digits
        Alphabet ak(1);
        for (int d = -maxk; d <= maxk; ++d) ak.add(Symbol::single(d));
        ak.add(Symbol::star_sym());
        BuchiAutomaton lz(ak);
        // first block chain (the + in (0^{k-1} A)^+), then looping blocks;
        // the star is only allowed after at least one complete block
        std::vector<int> first(static_cast<size_t>(k)), preb(static_cast<size_t>(k)),
            postb(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) first[static_cast<size_t>(i)] = lz.add_state(false);
        for (int i = 0; i < k; ++i) preb[static_cast<size_t>(i)] = lz.add_state(false);
        for (int i = 0; i < k; ++i) postb[static_cast<size_t>(i)] = lz.add_state(i == 0);
        for (int i = 0; i + 1 < k; ++i) {
            lz.add_transition(first[static_cast<size_t>(i)], Symbol::single(0), first[static_cast<size_t>(i + 1)]);
            lz.add_transition(preb[static_cast<size_t>(i)], Symbol::single(0), preb[static_cast<size_t>(i + 1)]);
            lz.add_transition(postb[static_cast<size_t>(i)], Symbol::single(0), postb[static_cast<size_t>(i + 1)]);
        }
        for (int d = -maxk; d <= maxk; ++d) {
            lz.add_transition(first[static_cast<size_t>(k - 1)], Symbol::single(d), preb[0]);
            lz.add_transition(preb[static_cast<size_t>(k - 1)], Symbol::single(d), preb[0]);
            lz.add_transition(postb[static_cast<size_t>(k - 1)], Symbol::single(d), postb[0]);
        }
        lz.add_transition(preb[0], Symbol::star_sym(), postb[0]);
        lz.set_initial({first[0]});
        lz.finalize();
        // relation input cap L_zeta, output cap 0* d_beta(X)
        auto norm = build_normalizer(base, maxk);
        auto zp = canonical_pad(x, PaddingMode::zero_padded);
        // intersect the input side with L_zeta first: pre-compose by running
        // the product on the transducer side
        auto lx = apply_transducer(norm, zp.machine, /*inverse=*/true);
        auto lx2 = reduce(intersect(reduce(lx), lz));
        // zeta-preimage: strip the 0^{k-1} padding blocks
        auto h = [k](const Symbol& s) {
            if (s.star) return std::vector<Symbol>{Symbol::star_sym()};
            std::vector<Symbol> w(static_cast<size_t>(k - 1), Symbol::single(0));
            w.push_back(s);
            return w;
        };
        auto mx = inverse_map(lx2, h, ak);
        // normalize in base beta^k
        auto norm_k = build_normalizer(base_k, maxk);
        auto dk = apply_transducer(norm_k, reduce(mx));
        RealSetAutomaton out{base_k, 1, zero_pad_normalize(base_k, 1, reduce(dk)),
                             PaddingMode::zero_padded};
        return saturate_set(out);
    }
    // beta^k -> beta needs the root base, which the power profile cannot
    // reconstruct; use rebase_power_down
    throw std::invalid_argument("use rebase_power_down(root_base, x, k) for the beta^k -> beta direction");
}

/// beta^k -> beta: zeta_k image of the representations, normalized in beta.
inline RealSetAutomaton rebase_power_down(const BasePtr& base_root, const RealSetAutomaton& xk,
                                          int k) {
    if (xk.arity != 1) throw std::invalid_argument("rebase implemented for arity 1");
    if (!base_root->pisot) throw std::domain_error("rebase requires a Pisot base");
    auto zp = canonical_pad(xk, PaddingMode::zero_padded);
    int maxk = xk.base->max_digit;
    auto h = [k](const Symbol& s) {
        if (s.star) return std::vector<Symbol>{Symbol::star_sym()};
        std::vector<Symbol> w(static_cast<size_t>(k - 1), Symbol::single(0));
        w.push_back(s);
        return w;
    };
    auto img = map_alphabet(zp.machine, h, 1);
    auto norm = build_normalizer(base_root, maxk);
    auto db = apply_transducer(norm, reduce(img));
    RealSetAutomaton out{base_root, 1, zero_pad_normalize(base_root, 1, reduce(db)),
                         PaddingMode::zero_padded};
    return saturate_set(out);
}

}  // namespace betarec
