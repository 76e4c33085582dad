#pragma once

#include <deque>
#include <queue>

#include "betarec/automaton.hpp"

namespace betarec {

struct ComplementCapExceeded : std::runtime_error {
    size_t required;
    explicit ComplementCapExceeded(size_t req)
        : std::runtime_error("complementation cap exceeded; construction needs at least " +
                             std::to_string(req) + " states"),
          required(req) {}
};

/// Restriction to accessible and co-accessible states (co-accessible for
/// Buchi acceptance: able to reach an accepting cycle). Language preserved.
inline BuchiAutomaton trim(const BuchiAutomaton& a) {
    auto r = a.reachable();
    auto c = a.coaccessible();
    std::vector<int> remap(static_cast<size_t>(a.num_states), -1);
    BuchiAutomaton out(a.alphabet);
    for (int q = 0; q < a.num_states; ++q)
        if (r[static_cast<size_t>(q)] && c[static_cast<size_t>(q)])
            remap[static_cast<size_t>(q)] = out.add_state(a.accepting[static_cast<size_t>(q)]);
    a.finalize();
    for (const auto& t : a.transitions) {
        int f = remap[static_cast<size_t>(t.from)], to = remap[static_cast<size_t>(t.to)];
        if (f >= 0 && to >= 0) out.add_transition_idx(f, t.sym, to);
    }
    std::vector<int> ini;
    for (int q : a.initial)
        if (remap[static_cast<size_t>(q)] >= 0) ini.push_back(remap[static_cast<size_t>(q)]);
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Forward-bisimulation quotient (partition refinement on acceptance and
/// successor-class signatures); language preserving, often shrinks products.
inline BuchiAutomaton quotient_reduce(const BuchiAutomaton& a) {
    a.finalize();
    std::vector<int> cls(static_cast<size_t>(a.num_states));
    for (int q = 0; q < a.num_states; ++q) cls[static_cast<size_t>(q)] = a.accepting[static_cast<size_t>(q)] ? 1 : 0;
    while (true) {
        std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> sig_ids;
        std::vector<int> next(static_cast<size_t>(a.num_states));
        for (int q = 0; q < a.num_states; ++q) {
            std::vector<std::pair<int, int>> sig;
            auto [lo, hi] = a.out_range(q);
            for (size_t e = lo; e < hi; ++e)
                sig.emplace_back(a.transitions[e].sym, cls[static_cast<size_t>(a.transitions[e].to)]);
            std::sort(sig.begin(), sig.end());
            sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
            auto key = std::make_pair(cls[static_cast<size_t>(q)], std::move(sig));
            auto it = sig_ids.find(key);
            if (it == sig_ids.end()) it = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size())).first;
            next[static_cast<size_t>(q)] = it->second;
        }
        bool changed = next != cls;
        cls = std::move(next);
        if (!changed) break;
    }
    int ncls = 0;
    for (int c : cls) ncls = std::max(ncls, c + 1);
    BuchiAutomaton out(a.alphabet);
    for (int c = 0; c < ncls; ++c) out.add_state(false);
    for (int q = 0; q < a.num_states; ++q)
        if (a.accepting[static_cast<size_t>(q)]) out.accepting[static_cast<size_t>(cls[static_cast<size_t>(q)])] = true;
    for (const auto& t : a.transitions)
        out.add_transition_idx(cls[static_cast<size_t>(t.from)], t.sym, cls[static_cast<size_t>(t.to)]);
    std::vector<int> ini;
    for (int q : a.initial) ini.push_back(cls[static_cast<size_t>(q)]);
    out.set_initial(ini);
    out.finalize();
    return out;
}

inline BuchiAutomaton reduce(const BuchiAutomaton& a) { return quotient_reduce(trim(a)); }

namespace detail {

/// Merged alphabet for a binary operation; symbols matched by value.
inline Alphabet merge_alphabets(const Alphabet& a, const Alphabet& b) {
    if (a.arity() != b.arity()) throw std::invalid_argument("alphabet arity mismatch");
    Alphabet m(a.arity());
    for (const auto& s : a.symbols()) m.add(s);
    for (const auto& s : b.symbols()) m.add(s);
    return m;
}

}  // namespace detail

/// Buchi intersection. Plain product with conjunct acceptance when both
/// inputs are weak; otherwise the standard 2-phase product.
inline BuchiAutomaton intersect(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    a.finalize();
    b.finalize();
    Alphabet m = detail::merge_alphabets(a.alphabet, b.alphabet);
    bool weak = a.is_weak() && b.is_weak();
    int phases = weak ? 1 : 2;
    BuchiAutomaton out(m);
    std::map<std::tuple<int, int, int>, int> id;
    std::deque<std::tuple<int, int, int>> work;
    auto get = [&](int p, int q, int ph) {
        auto key = std::make_tuple(p, q, ph);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        bool acc = weak ? (a.accepting[static_cast<size_t>(p)] && b.accepting[static_cast<size_t>(q)])
                        : (ph == 1 && b.accepting[static_cast<size_t>(q)]);
        int s = out.add_state(acc);
        id.emplace(key, s);
        work.push_back(key);
        return s;
    };
    std::vector<int> ini;
    for (int p : a.initial)
        for (int q : b.initial) ini.push_back(get(p, q, 0));
    while (!work.empty()) {
        auto [p, q, ph] = work.front();
        work.pop_front();
        int from = id[{p, q, ph}];
        auto [lo, hi] = a.out_range(p);
        for (size_t e = lo; e < hi; ++e) {
            const Symbol& sym = a.alphabet.at(a.transitions[e].sym);
            auto bsym = b.alphabet.find(sym);
            if (!bsym) continue;
            int msym = *m.find(sym);
            for (int qt : b.post(q, *bsym)) {
                int ph2 = ph;
                if (phases == 2) {
                    // phase 0 waits for an accepting a-state, phase 1 for b
                    if (ph == 0 && a.accepting[static_cast<size_t>(a.transitions[e].to)]) ph2 = 1;
                    if (ph == 1 && b.accepting[static_cast<size_t>(qt)]) ph2 = 0;
                }
                out.add_transition_idx(from, msym, get(a.transitions[e].to, qt, ph2));
            }
        }
    }
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Disjoint union.
inline BuchiAutomaton union_automaton(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    a.finalize();
    b.finalize();
    Alphabet m = detail::merge_alphabets(a.alphabet, b.alphabet);
    BuchiAutomaton out(m);
    for (int q = 0; q < a.num_states; ++q) out.add_state(a.accepting[static_cast<size_t>(q)]);
    for (int q = 0; q < b.num_states; ++q) out.add_state(b.accepting[static_cast<size_t>(q)]);
    for (const auto& t : a.transitions)
        out.add_transition(t.from, a.alphabet.at(t.sym), t.to);
    for (const auto& t : b.transitions)
        out.add_transition(t.from + a.num_states, b.alphabet.at(t.sym), t.to + a.num_states);
    std::vector<int> ini = a.initial;
    for (int q : b.initial) ini.push_back(q + a.num_states);
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Language-preserving acceptance normalization: marks each SCC uniformly.
/// Valid when no SCC carries both an accepting cycle and a rejecting cycle
/// (throws otherwise); output is structurally weak.
inline BuchiAutomaton weak_normalize(const BuchiAutomaton& a) {
    auto info = a.scc();
    BuchiAutomaton out = a;
    for (int cid = 0; cid < info.count; ++cid) {
        bool acc_cycle = info.has_cycle[static_cast<size_t>(cid)] && info.has_accepting[static_cast<size_t>(cid)];
        // has_accepting alone is not enough: need an accepting state on a cycle,
        // and in an SCC with a cycle every state is on one
        bool rej_cycle = info.has_rejecting_cycle[static_cast<size_t>(cid)];
        if (acc_cycle && rej_cycle)
            throw std::runtime_error("automaton is not weak-convertible (mixed SCC)");
    }
    for (int q = 0; q < a.num_states; ++q) {
        int cid = info.comp[static_cast<size_t>(q)];
        bool acc = info.has_cycle[static_cast<size_t>(cid)] && info.has_accepting[static_cast<size_t>(cid)];
        out.accepting[static_cast<size_t>(q)] = acc;
    }
    out.finalize();
    return out;
}

inline bool is_weak_convertible(const BuchiAutomaton& a) {
    auto info = a.scc();
    for (int cid = 0; cid < info.count; ++cid)
        if (info.has_cycle[static_cast<size_t>(cid)] && info.has_accepting[static_cast<size_t>(cid)] &&
            info.has_rejecting_cycle[static_cast<size_t>(cid)])
            return false;
    return true;
}

namespace detail {

/// Complement of a deterministic automaton via the co-Buchi 2-copy trick:
/// the unique run avoids accepting states eventually, or dies. Copy 2 is the
/// accepting-free part entered by a nondeterministic jump; runs that die are
/// caught by a complete-automaton sink.
inline BuchiAutomaton complement_deterministic(const BuchiAutomaton& a) {
    if (!a.is_deterministic()) throw std::logic_error("complement_deterministic needs a deterministic input");
    a.finalize();
    BuchiAutomaton out(a.alphabet);
    // copy 1: a's states (non-accepting); copy 2: non-accepting states of a
    // (accepting); plus an accepting sink for missing transitions
    std::vector<int> c1(static_cast<size_t>(a.num_states)), c2(static_cast<size_t>(a.num_states), -1);
    for (int q = 0; q < a.num_states; ++q) c1[static_cast<size_t>(q)] = out.add_state(false);
    for (int q = 0; q < a.num_states; ++q)
        if (!a.accepting[static_cast<size_t>(q)]) c2[static_cast<size_t>(q)] = out.add_state(true);
    int sink = out.add_state(true);
    for (size_t s = 0; s < a.alphabet.size(); ++s)
        out.add_transition_idx(sink, static_cast<int>(s), sink);
    for (int q = 0; q < a.num_states; ++q) {
        for (size_t s = 0; s < a.alphabet.size(); ++s) {
            auto succ = a.post(q, static_cast<int>(s));
            if (succ.empty()) {
                // the run dies here: every continuation is in the complement
                out.add_transition_idx(c1[static_cast<size_t>(q)], static_cast<int>(s), sink);
                if (c2[static_cast<size_t>(q)] >= 0)
                    out.add_transition_idx(c2[static_cast<size_t>(q)], static_cast<int>(s), sink);
            } else {
                int to = succ[0];
                out.add_transition_idx(c1[static_cast<size_t>(q)], static_cast<int>(s), c1[static_cast<size_t>(to)]);
                if (c2[static_cast<size_t>(to)] >= 0) {
                    out.add_transition_idx(c1[static_cast<size_t>(q)], static_cast<int>(s), c2[static_cast<size_t>(to)]);
                    if (c2[static_cast<size_t>(q)] >= 0)
                        out.add_transition_idx(c2[static_cast<size_t>(q)], static_cast<int>(s), c2[static_cast<size_t>(to)]);
                }
            }
        }
    }
    std::vector<int> ini;
    if (a.initial.empty()) {
        // empty language: complement is the universe
        ini.push_back(sink);
    } else {
        for (int q : a.initial) {
            ini.push_back(c1[static_cast<size_t>(q)]);
            if (c2[static_cast<size_t>(q)] >= 0) ini.push_back(c2[static_cast<size_t>(q)]);
        }
    }
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Miyano-Hayashi breakpoint complement for weak nondeterministic automata
/// (sound because weak Buchi = co-Buchi on the same acceptance set). Output
/// is deterministic.
inline BuchiAutomaton complement_weak_mh(const BuchiAutomaton& a, size_t cap) {
    if (!a.is_weak()) throw std::logic_error("MH complement needs a weak input");
    a.finalize();
    using SetPair = std::pair<std::vector<int>, std::vector<int>>;  // (S, O), sorted
    BuchiAutomaton out(a.alphabet);
    std::map<SetPair, int> id;
    std::deque<SetPair> work;
    auto get = [&](SetPair sp) {
        auto it = id.find(sp);
        if (it != id.end()) return it->second;
        if (id.size() >= cap) throw ComplementCapExceeded(id.size() + 1);
        int s = out.add_state(sp.second.empty());
        id.emplace(sp, s);
        work.push_back(std::move(sp));
        return s;
    };
    SetPair init{a.initial, {}};
    {
        std::vector<int> o;
        for (int q : init.first)
            if (a.accepting[static_cast<size_t>(q)]) o.push_back(q);
        init.second = std::move(o);  // breakpoint starts immediately
    }
    int istate = get(init);
    while (!work.empty()) {
        SetPair sp = work.front();
        work.pop_front();
        int from = id[sp];
        // collect usable symbols
        std::set<int> syms;
        for (int q : sp.first) {
            auto [lo, hi] = a.out_range(q);
            for (size_t e = lo; e < hi; ++e) syms.insert(a.transitions[e].sym);
        }
        for (int s : syms) {
            std::set<int> S2;
            for (int q : sp.first)
                for (int t : a.post(q, s)) S2.insert(t);
            if (S2.empty()) continue;
            std::set<int> O2;
            if (sp.second.empty()) {
                for (int q : S2)
                    if (a.accepting[static_cast<size_t>(q)]) O2.insert(q);
            } else {
                for (int q : sp.second)
                    for (int t : a.post(q, s))
                        if (a.accepting[static_cast<size_t>(t)]) O2.insert(t);
            }
            SetPair nxt{std::vector<int>(S2.begin(), S2.end()),
                        std::vector<int>(O2.begin(), O2.end())};
            int sym_out = *out.alphabet.find(a.alphabet.at(s));
            out.add_transition_idx(from, sym_out, get(std::move(nxt)));
        }
        // symbols with no successor at all: complement accepts everything after;
        // route to an all-accepting sink
    }
    // sink for symbols killing all runs (and for symbols never read by a)
    int sink = out.add_state(true);
    for (size_t s = 0; s < out.alphabet.size(); ++s) out.add_transition_idx(sink, static_cast<int>(s), sink);
    out.finalize();
    // add missing transitions from each subset state to the sink
    BuchiAutomaton filled = out;
    for (auto& [sp, from] : id) {
        std::set<int> have;
        auto [lo, hi] = out.out_range(from);
        for (size_t e = lo; e < hi; ++e) have.insert(out.transitions[e].sym);
        for (size_t s = 0; s < out.alphabet.size(); ++s)
            if (!have.count(static_cast<int>(s)))
                filled.add_transition_idx(from, static_cast<int>(s), sink);
    }
    filled.set_initial({istate});
    filled.finalize();
    return filled;
}

/// Rank-based (Kupferman-Vardi) complementation for general nondeterministic
/// Buchi automata, tight rank bound 2(|Q| - |accepting|).
inline BuchiAutomaton complement_rank_based(const BuchiAutomaton& a, size_t cap) {
    a.finalize();
    int n = a.num_states;
    int nonacc = 0;
    for (int q = 0; q < n; ++q)
        if (!a.accepting[static_cast<size_t>(q)]) ++nonacc;
    int maxrank = 2 * nonacc;
    using Ranking = std::vector<int>;  // -1 = not present
    using State = std::pair<Ranking, std::vector<int>>;
    BuchiAutomaton out(a.alphabet);
    std::map<State, int> id;
    std::deque<State> work;
    auto get = [&](State st) {
        auto it = id.find(st);
        if (it != id.end()) return it->second;
        if (id.size() >= cap) throw ComplementCapExceeded(id.size() + 1);
        int s = out.add_state(st.second.empty());
        id.emplace(st, s);
        work.push_back(std::move(st));
        return s;
    };
    Ranking init(static_cast<size_t>(n), -1);
    for (int q : a.initial) init[static_cast<size_t>(q)] = maxrank;
    // O starts with even-ranked present states (all, rank is even)
    std::vector<int> initO;
    for (int q : a.initial) initO.push_back(q);
    int istate = get({init, initO});
    // enumerate successor rankings: for each present successor q', rank <=
    // min over predecessors, accepting states even
    while (!work.empty()) {
        State st = work.front();
        work.pop_front();
        int from = id[st];
        const Ranking& f = st.first;
        std::set<int> syms;
        for (int q = 0; q < n; ++q) {
            if (f[static_cast<size_t>(q)] < 0) continue;
            auto [lo, hi] = a.out_range(q);
            for (size_t e = lo; e < hi; ++e) syms.insert(a.transitions[e].sym);
        }
        for (int s : syms) {
            // bound per successor state
            std::vector<int> bound(static_cast<size_t>(n), -1);
            for (int q = 0; q < n; ++q) {
                if (f[static_cast<size_t>(q)] < 0) continue;
                auto succ = a.post(q, s);
                if (succ.empty()) {
                    // this run dies; fine for complement (only infinite runs matter)
                    continue;
                }
                for (int t : succ) {
                    int& b = bound[static_cast<size_t>(t)];
                    b = b < 0 ? f[static_cast<size_t>(q)] : std::min(b, f[static_cast<size_t>(q)]);
                }
            }
            std::vector<int> present;
            for (int q = 0; q < n; ++q)
                if (bound[static_cast<size_t>(q)] >= 0) present.push_back(q);
            if (present.empty()) continue;  // all runs died: handled by sink below
            // enumerate rankings: choice per present state from 0..bound (accepting: even only)
            std::vector<std::vector<int>> choices;
            for (int q : present) {
                std::vector<int> c;
                for (int r = 0; r <= bound[static_cast<size_t>(q)]; ++r) {
                    if (a.accepting[static_cast<size_t>(q)] && r % 2 == 1) continue;
                    c.push_back(r);
                }
                choices.push_back(std::move(c));
            }
            std::vector<size_t> pick(choices.size(), 0);
            while (true) {
                Ranking g(static_cast<size_t>(n), -1);
                for (size_t i = 0; i < present.size(); ++i)
                    g[static_cast<size_t>(present[i])] = choices[i][pick[i]];
                // O-successor
                std::set<int> O2;
                if (st.second.empty()) {
                    for (int q : present)
                        if (g[static_cast<size_t>(q)] % 2 == 0) O2.insert(q);
                } else {
                    for (int q : st.second) {
                        if (f[static_cast<size_t>(q)] < 0) continue;
                        for (int t : a.post(q, s))
                            if (g[static_cast<size_t>(t)] >= 0 && g[static_cast<size_t>(t)] % 2 == 0) O2.insert(t);
                    }
                }
                get(State{g, std::vector<int>(O2.begin(), O2.end())});
                out.add_transition_idx(from, *out.alphabet.find(a.alphabet.at(s)),
                                       id[State{g, std::vector<int>(O2.begin(), O2.end())}]);
                // odometer
                size_t i = 0;
                for (; i < pick.size(); ++i) {
                    if (pick[i] + 1 < choices[i].size()) {
                        ++pick[i];
                        break;
                    }
                    pick[i] = 0;
                }
                if (i == pick.size()) break;
            }
        }
    }
    // all-accepting sink for words killing every run and symbols unread
    int sink = out.add_state(true);
    for (size_t s = 0; s < out.alphabet.size(); ++s) out.add_transition_idx(sink, static_cast<int>(s), sink);
    BuchiAutomaton filled = out;
    for (auto& [st, from] : id) {
        const Ranking& f = st.first;
        for (size_t s = 0; s < out.alphabet.size(); ++s) {
            // does some present state survive s?
            bool survivor = false;
            for (int q = 0; q < n && !survivor; ++q)
                if (f[static_cast<size_t>(q)] >= 0 && !a.post(q, static_cast<int>(s)).empty()) survivor = true;
            if (!survivor) filled.add_transition_idx(from, static_cast<int>(s), sink);
        }
    }
    filled.set_initial(a.initial.empty() ? std::vector<int>{sink} : std::vector<int>{istate});
    filled.finalize();
    return filled;
}

}  // namespace detail

/// Complement relative to the automaton's declared alphabet. Deterministic
/// weak inputs complement by acceptance swap on the completed automaton;
/// other deterministic inputs by the co-Buchi 2-copy; weak nondeterministic
/// by Miyano-Hayashi; everything else rank-based under the cap.
inline BuchiAutomaton complement(const BuchiAutomaton& a, size_t cap = 1000000) {
    if (a.is_deterministic()) return detail::complement_deterministic(a);
    if (a.is_weak()) return detail::complement_weak_mh(a, cap);
    if (is_weak_convertible(a)) return detail::complement_weak_mh(weak_normalize(a), cap);
    return detail::complement_rank_based(a, cap);
}

inline bool equivalent(const BuchiAutomaton& a, const BuchiAutomaton& b, size_t cap = 1000000) {
    BuchiAutomaton ra = reduce(a), rb = reduce(b);
    if (!intersect(ra, complement(rb, cap)).is_empty()) return false;
    if (!intersect(rb, complement(ra, cap)).is_empty()) return false;
    return true;
}

/// M copies with transitions advancing the copy index mod M; language
/// preserved and every cycle in the result has length >= M.
inline BuchiAutomaton cyclic_unroll(const BuchiAutomaton& a, int m) {
    if (m < 1) throw std::invalid_argument("unroll count must be >= 1");
    a.finalize();
    BuchiAutomaton out(a.alphabet);
    for (int copy = 0; copy < m; ++copy)
        for (int q = 0; q < a.num_states; ++q) out.add_state(a.accepting[static_cast<size_t>(q)]);
    auto id = [&](int q, int copy) { return copy * a.num_states + q; };
    for (const auto& t : a.transitions)
        for (int copy = 0; copy < m; ++copy)
            out.add_transition_idx(id(t.from, copy), t.sym, id(t.to, (copy + 1) % m));
    std::vector<int> ini;
    for (int q : a.initial) ini.push_back(id(q, 0));
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Morphic image: each symbol maps to a nonempty word; realized by edge
/// subdivision through fresh intermediate states.
inline BuchiAutomaton map_alphabet(const BuchiAutomaton& a,
                                   const std::function<std::vector<Symbol>(const Symbol&)>& h,
                                   int out_arity) {
    a.finalize();
    BuchiAutomaton out{Alphabet(out_arity)};
    for (int q = 0; q < a.num_states; ++q) out.add_state(a.accepting[static_cast<size_t>(q)]);
    for (const auto& t : a.transitions) {
        std::vector<Symbol> w = h(a.alphabet.at(t.sym));
        if (w.empty()) throw std::invalid_argument("morphism image must be nonempty");
        int cur = t.from;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            int mid = out.add_state(false);
            out.add_transition(cur, w[i], mid);
            cur = mid;
        }
        out.add_transition(cur, w.back(), t.to);
    }
    out.set_initial(a.initial);
    out.finalize();
    return out;
}

/// Inverse morphic image: accepts w iff h(w) is accepted. States carry a bit
/// recording whether the last simulated segment visited acceptance.
inline BuchiAutomaton inverse_map(const BuchiAutomaton& a,
                                  const std::function<std::vector<Symbol>(const Symbol&)>& h,
                                  const Alphabet& domain) {
    a.finalize();
    BuchiAutomaton out(domain);
    auto id = [&](int q, int bit) { return 2 * q + bit; };
    for (int q = 0; q < a.num_states; ++q) {
        out.add_state(false);
        out.add_state(true);
    }
    for (int q = 0; q < a.num_states; ++q) {
        for (size_t s = 0; s < domain.size(); ++s) {
            std::vector<Symbol> w = h(domain.at(static_cast<int>(s)));
            if (w.empty()) throw std::invalid_argument("morphism image must be nonempty");
            // all (target, visited-accepting) pairs reachable on w from q
            std::set<std::pair<int, int>> cur{{q, 0}};
            for (const Symbol& sym : w) {
                std::set<std::pair<int, int>> nxt;
                auto sid = a.alphabet.find(sym);
                if (!sid) {
                    cur.clear();
                    break;
                }
                for (auto [p, vis] : cur)
                    for (int t : a.post(p, *sid))
                        nxt.emplace(t, vis || a.accepting[static_cast<size_t>(t)] ? 1 : 0);
                cur = std::move(nxt);
            }
            for (auto [t, vis] : cur) {
                out.add_transition_idx(id(q, 0), static_cast<int>(s), id(t, vis));
                out.add_transition_idx(id(q, 1), static_cast<int>(s), id(t, vis));
            }
        }
    }
    std::vector<int> ini;
    for (int q : a.initial) ini.push_back(id(q, 0));
    out.set_initial(ini);
    out.finalize();
    return out;
}

/// Track projection: keep the listed tuple components (0-based); the star
/// tuple maps to the lower-arity star.
inline BuchiAutomaton project(const BuchiAutomaton& a, const std::vector<int>& keep) {
    a.finalize();
    int n = a.alphabet.arity();
    for (int k : keep)
        if (k < 0 || k >= n) throw std::invalid_argument("projection index out of range");
    if (keep.empty()) throw std::invalid_argument("projection must keep at least one track");
    BuchiAutomaton out{Alphabet(static_cast<int>(keep.size()))};
    for (int q = 0; q < a.num_states; ++q) out.add_state(a.accepting[static_cast<size_t>(q)]);
    for (const auto& t : a.transitions) {
        const Symbol& s = a.alphabet.at(t.sym);
        Symbol ns;
        if (s.star) {
            ns = Symbol::star_sym();
        } else {
            std::vector<Digit> d;
            for (int k : keep) d.push_back(s.digits[static_cast<size_t>(k)]);
            ns = Symbol::tuple(std::move(d));
        }
        out.add_transition(t.from, ns, t.to);
    }
    out.set_initial(a.initial);
    out.finalize();
    return out;
}

/// Any accepted ultimately periodic word, or nullopt when empty.
inline std::optional<SymbolWord> sample_word(const BuchiAutomaton& a) {
    a.finalize();
    auto r = a.reachable();
    auto info = a.scc();
    // find a reachable accepting state in a cyclic SCC
    int target = -1;
    for (int q = 0; q < a.num_states; ++q)
        if (r[static_cast<size_t>(q)] && a.accepting[static_cast<size_t>(q)] &&
            info.has_cycle[static_cast<size_t>(info.comp[static_cast<size_t>(q)])]) {
            target = q;
            break;
        }
    if (target < 0) return std::nullopt;
    // BFS path from initial to target
    std::vector<int> par(static_cast<size_t>(a.num_states), -1), psym(static_cast<size_t>(a.num_states), -1);
    std::deque<int> bfs;
    std::vector<bool> seen(static_cast<size_t>(a.num_states), false);
    for (int q : a.initial) {
        seen[static_cast<size_t>(q)] = true;
        bfs.push_back(q);
    }
    while (!bfs.empty()) {
        int q = bfs.front();
        bfs.pop_front();
        auto [lo, hi] = a.out_range(q);
        for (size_t e = lo; e < hi; ++e) {
            int w = a.transitions[e].to;
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = true;
                par[static_cast<size_t>(w)] = q;
                psym[static_cast<size_t>(w)] = a.transitions[e].sym;
                bfs.push_back(w);
            }
        }
    }
    std::vector<Symbol> prefix;
    for (int q = target; par[static_cast<size_t>(q)] >= 0; q = par[static_cast<size_t>(q)])
        prefix.push_back(a.alphabet.at(psym[static_cast<size_t>(q)]));
    std::reverse(prefix.begin(), prefix.end());
    // cycle target -> target within its SCC
    int cid = info.comp[static_cast<size_t>(target)];
    std::vector<int> cpar(static_cast<size_t>(a.num_states), -2), csym(static_cast<size_t>(a.num_states), -1);
    std::deque<int> q2{target};
    cpar[static_cast<size_t>(target)] = -1;
    std::vector<Symbol> loop;
    bool found = false;
    while (!q2.empty() && !found) {
        int q = q2.front();
        q2.pop_front();
        auto [lo, hi] = a.out_range(q);
        for (size_t e = lo; e < hi; ++e) {
            int w = a.transitions[e].to;
            if (info.comp[static_cast<size_t>(w)] != cid) continue;
            if (w == target) {
                std::vector<Symbol> rev;
                rev.push_back(a.alphabet.at(a.transitions[e].sym));
                for (int x = q; cpar[static_cast<size_t>(x)] != -1; x = cpar[static_cast<size_t>(x)])
                    rev.push_back(a.alphabet.at(csym[static_cast<size_t>(x)]));
                loop.assign(rev.rbegin(), rev.rend());
                found = true;
                break;
            }
            if (cpar[static_cast<size_t>(w)] == -2) {
                cpar[static_cast<size_t>(w)] = q;
                csym[static_cast<size_t>(w)] = a.transitions[e].sym;
                q2.push_back(w);
            }
        }
    }
    if (!found) return std::nullopt;  // should not happen: SCC has a cycle
    return SymbolWord(std::move(prefix), std::move(loop));
}

/// Up to `limit` accepted lasso words, for sampling-style checks.
inline std::vector<SymbolWord> enumerate_words(const BuchiAutomaton& a, size_t limit,
                                               size_t max_len = 12) {
    a.finalize();
    std::set<SymbolWord> out;
    auto info = a.scc();
    // DFS over paths up to max_len; whenever we close a cycle through an
    // accepting state back onto the path, record prefix(loop)
    struct Step {
        int state;
        int sym;  // symbol used to get here (-1 for roots)
    };
    std::vector<Step> path;
    std::vector<std::vector<int>> positions(static_cast<size_t>(a.num_states));
    std::function<void(int)> dfs = [&](int q) {
        if (out.size() >= limit || path.size() > max_len) return;
        auto [lo, hi] = a.out_range(q);
        for (size_t e = lo; e < hi && out.size() < limit; ++e) {
            int w = a.transitions[e].to;
            const auto& occ = positions[static_cast<size_t>(w)];
            if (!occ.empty()) {
                // close a lasso at the last occurrence of w on the path
                int p = occ.back();
                bool acc = a.accepting[static_cast<size_t>(w)];
                for (size_t i = static_cast<size_t>(p); i < path.size(); ++i)
                    if (a.accepting[static_cast<size_t>(path[i].state)]) acc = true;
                if (acc) {
                    std::vector<Symbol> pre, loop;
                    for (size_t i = 1; i <= static_cast<size_t>(p); ++i)
                        pre.push_back(a.alphabet.at(path[i].sym));
                    for (size_t i = static_cast<size_t>(p) + 1; i < path.size(); ++i)
                        loop.push_back(a.alphabet.at(path[i].sym));
                    loop.push_back(a.alphabet.at(a.transitions[e].sym));
                    out.insert(SymbolWord(std::move(pre), std::move(loop)));
                }
            }
            if (occ.size() < 2) {  // allow a bounded revisit for longer variants
                path.push_back({w, a.transitions[e].sym});
                positions[static_cast<size_t>(w)].push_back(static_cast<int>(path.size()) - 1);
                dfs(w);
                positions[static_cast<size_t>(w)].pop_back();
                path.pop_back();
            }
        }
    };
    for (int q : a.initial) {
        path.push_back({q, -1});
        positions[static_cast<size_t>(q)].push_back(0);
        dfs(q);
        positions[static_cast<size_t>(q)].pop_back();
        path.pop_back();
        if (out.size() >= limit) break;
    }
    return {out.begin(), out.end()};
}

/// Exact graph isomorphism respecting initial/accepting/labels, for small
/// automata (backtracking).
inline bool isomorphic(const BuchiAutomaton& a, const BuchiAutomaton& b) {
    a.finalize();
    b.finalize();
    if (a.num_states != b.num_states || a.transitions.size() != b.transitions.size() ||
        a.initial.size() != b.initial.size())
        return false;
    int n = a.num_states;
    std::vector<int> map(static_cast<size_t>(n), -1), used(static_cast<size_t>(n), 0);
    std::set<int> aini(a.initial.begin(), a.initial.end()), bini(b.initial.begin(), b.initial.end());
    std::function<bool(int)> go = [&](int q) {
        if (q == n) {
            // verify all transitions
            for (const auto& t : a.transitions) {
                const Symbol& s = a.alphabet.at(t.sym);
                auto bs = b.alphabet.find(s);
                if (!bs) return false;
                auto succ = b.post(map[static_cast<size_t>(t.from)], *bs);
                if (std::find(succ.begin(), succ.end(), map[static_cast<size_t>(t.to)]) == succ.end())
                    return false;
            }
            return true;
        }
        for (int c = 0; c < n; ++c) {
            if (used[static_cast<size_t>(c)]) continue;
            if (a.accepting[static_cast<size_t>(q)] != b.accepting[static_cast<size_t>(c)]) continue;
            if (aini.count(q) != bini.count(c)) continue;
            auto [alo, ahi] = a.out_range(q);
            auto [blo, bhi] = b.out_range(c);
            if (ahi - alo != bhi - blo) continue;
            map[static_cast<size_t>(q)] = c;
            used[static_cast<size_t>(c)] = 1;
            if (go(q + 1)) return true;
            used[static_cast<size_t>(c)] = 0;
            map[static_cast<size_t>(q)] = -1;
        }
        return false;
    };
    return go(0);
}

/// Automaton accepting all infinite words over the given alphabet.
inline BuchiAutomaton universe_automaton(const Alphabet& alpha) {
    BuchiAutomaton u(alpha);
    int q = u.add_state(true);
    for (size_t s = 0; s < alpha.size(); ++s) u.add_transition_idx(q, static_cast<int>(s), q);
    u.set_initial({q});
    u.finalize();
    return u;
}

}  // namespace betarec
