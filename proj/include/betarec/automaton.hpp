#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "betarec/words.hpp"

namespace betarec {

/// Alphabet symbol: an n-tuple of digits or the star tuple.
struct Symbol {
    bool star = false;
    std::vector<Digit> digits;  // empty when star

    static Symbol star_sym() {
        Symbol s;
        s.star = true;
        return s;
    }
    static Symbol tuple(std::vector<Digit> d) {
        Symbol s;
        s.digits = std::move(d);
        return s;
    }
    static Symbol single(Digit d) { return tuple({d}); }

    bool operator==(const Symbol& o) const { return star == o.star && digits == o.digits; }
    bool operator<(const Symbol& o) const {
        if (star != o.star) return star < o.star;
        return digits < o.digits;
    }

    std::string str() const {
        if (star) return "*";
        std::ostringstream os;
        if (digits.size() == 1) return std::to_string(digits[0]);
        os << "(";
        for (size_t i = 0; i < digits.size(); ++i) {
            if (i) os << ",";
            os << digits[i];
        }
        os << ")";
        return os.str();
    }
};

/// Dense symbol table; automata store transition labels as indices into it.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(int arity) : arity_(arity) {}

    int arity() const { return arity_; }
    size_t size() const { return syms_.size(); }
    const Symbol& at(int i) const { return syms_[static_cast<size_t>(i)]; }
    const std::vector<Symbol>& symbols() const { return syms_; }

    int add(const Symbol& s) {
        if (!s.star && arity_ >= 0 && static_cast<int>(s.digits.size()) != arity_)
            throw std::invalid_argument("symbol arity mismatch");
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(syms_.size());
        syms_.push_back(s);
        index_.emplace(s, id);
        return id;
    }
    std::optional<int> find(const Symbol& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool operator==(const Alphabet& o) const { return arity_ == o.arity_ && syms_ == o.syms_; }

    /// Full signed-tuple alphabet {-maxd..maxd}^arity plus star.
    static Alphabet full_signed(int arity, int maxd) {
        Alphabet a(arity);
        std::vector<Digit> cur(static_cast<size_t>(arity), -maxd);
        while (true) {
            a.add(Symbol::tuple(cur));
            int i = 0;
            for (; i < arity; ++i) {
                if (cur[static_cast<size_t>(i)] < maxd) {
                    ++cur[static_cast<size_t>(i)];
                    break;
                }
                cur[static_cast<size_t>(i)] = -maxd;
            }
            if (i == arity) break;
        }
        a.add(Symbol::star_sym());
        return a;
    }

private:
    int arity_ = -1;
    std::vector<Symbol> syms_;
    std::map<Symbol, int> index_;
};

struct Transition {
    int from;
    int sym;  // alphabet index
    int to;

    bool operator<(const Transition& o) const {
        return std::tie(from, sym, to) < std::tie(o.from, o.sym, o.to);
    }
    bool operator==(const Transition& o) const {
        return from == o.from && sym == o.sym && to == o.to;
    }
};

/// Buchi automaton over an explicit alphabet. States are dense indices;
/// structural flags are computed on demand and cached.
class BuchiAutomaton {
public:
    Alphabet alphabet;
    int num_states = 0;
    std::vector<Transition> transitions;  // kept sorted, unique
    std::vector<int> initial;             // sorted, unique
    std::vector<bool> accepting;

    BuchiAutomaton() = default;
    explicit BuchiAutomaton(Alphabet a) : alphabet(std::move(a)) {}

    int add_state(bool acc = false) {
        accepting.push_back(acc);
        return num_states++;
    }
    void add_transition(int from, const Symbol& s, int to) {
        transitions.push_back({from, alphabet.add(s), to});
        dirty_ = true;
    }
    void add_transition_idx(int from, int sym, int to) {
        transitions.push_back({from, sym, to});
        dirty_ = true;
    }
    void set_initial(std::vector<int> ini) {
        std::sort(ini.begin(), ini.end());
        ini.erase(std::unique(ini.begin(), ini.end()), ini.end());
        initial = std::move(ini);
    }

    void finalize() const {
        if (!dirty_) return;
        auto& t = const_cast<std::vector<Transition>&>(transitions);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        dirty_ = false;
        cache_ = {};
    }

    /// Successors of state q on symbol index s.
    std::vector<int> post(int q, int sym) const {
        finalize();
        std::vector<int> out;
        auto it = std::lower_bound(transitions.begin(), transitions.end(),
                                   Transition{q, sym, -1});
        for (; it != transitions.end() && it->from == q && it->sym == sym; ++it)
            out.push_back(it->to);
        return out;
    }
    /// All outgoing transitions of q.
    std::pair<size_t, size_t> out_range(int q) const {
        finalize();
        auto lo = std::lower_bound(transitions.begin(), transitions.end(),
                                   Transition{q, -1, -1});
        auto hi = std::lower_bound(transitions.begin(), transitions.end(),
                                   Transition{q + 1, -1, -1});
        return {static_cast<size_t>(lo - transitions.begin()),
                static_cast<size_t>(hi - transitions.begin())};
    }

    bool is_deterministic() const {
        finalize();
        if (initial.size() > 1) return false;
        for (size_t i = 1; i < transitions.size(); ++i)
            if (transitions[i].from == transitions[i - 1].from &&
                transitions[i].sym == transitions[i - 1].sym)
                return false;
        return true;
    }

    /// Tarjan SCC decomposition; returns component id per state (by finish
    /// order) and whether each component contains a cycle.
    struct SccInfo {
        std::vector<int> comp;
        int count = 0;
        std::vector<bool> has_cycle;
        std::vector<bool> has_accepting;      // accepting state in component
        std::vector<bool> has_rejecting_cycle;  // cycle avoiding accepting states
    };

    SccInfo scc() const {
        finalize();
        SccInfo info;
        info.comp.assign(static_cast<size_t>(num_states), -1);
        std::vector<int> index(static_cast<size_t>(num_states), -1),
            low(static_cast<size_t>(num_states), 0);
        std::vector<bool> on_stack(static_cast<size_t>(num_states), false);
        std::vector<int> stack;
        int next_index = 0;
        // iterative Tarjan
        struct Frame {
            int v;
            size_t edge;
            size_t end;
        };
        for (int root = 0; root < num_states; ++root) {
            if (index[static_cast<size_t>(root)] != -1) continue;
            std::vector<Frame> frames;
            auto push_state = [&](int v) {
                index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = next_index++;
                stack.push_back(v);
                on_stack[static_cast<size_t>(v)] = true;
                auto [lo, hi] = out_range(v);
                frames.push_back({v, lo, hi});
            };
            push_state(root);
            while (!frames.empty()) {
                Frame& f = frames.back();
                if (f.edge < f.end) {
                    int w = transitions[f.edge].to;
                    ++f.edge;
                    if (index[static_cast<size_t>(w)] == -1) {
                        push_state(w);
                    } else if (on_stack[static_cast<size_t>(w)]) {
                        low[static_cast<size_t>(f.v)] =
                            std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(w)]);
                    }
                } else {
                    int v = f.v;
                    frames.pop_back();
                    if (!frames.empty())
                        low[static_cast<size_t>(frames.back().v)] =
                            std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
                    if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
                        int cid = info.count++;
                        while (true) {
                            int w = stack.back();
                            stack.pop_back();
                            on_stack[static_cast<size_t>(w)] = false;
                            info.comp[static_cast<size_t>(w)] = cid;
                            if (w == v) break;
                        }
                    }
                }
            }
        }
        info.has_cycle.assign(static_cast<size_t>(info.count), false);
        info.has_accepting.assign(static_cast<size_t>(info.count), false);
        for (const auto& t : transitions)
            if (info.comp[static_cast<size_t>(t.from)] == info.comp[static_cast<size_t>(t.to)])
                info.has_cycle[static_cast<size_t>(info.comp[static_cast<size_t>(t.from)])] = true;
        for (int q = 0; q < num_states; ++q)
            if (accepting[static_cast<size_t>(q)])
                info.has_accepting[static_cast<size_t>(info.comp[static_cast<size_t>(q)])] = true;
        // rejecting cycle: cycle within the component avoiding accepting states
        info.has_rejecting_cycle.assign(static_cast<size_t>(info.count), false);
        {
            // a component has a rejecting cycle iff its non-accepting subgraph
            // (restricted to the component) has a cycle; reuse Tarjan on that
            // subgraph cheaply via self-reach check per component
            std::vector<std::vector<int>> members(static_cast<size_t>(info.count));
            for (int q = 0; q < num_states; ++q)
                members[static_cast<size_t>(info.comp[static_cast<size_t>(q)])].push_back(q);
            for (int cid = 0; cid < info.count; ++cid) {
                if (!info.has_cycle[static_cast<size_t>(cid)]) continue;
                // restricted subgraph on non-accepting members
                std::map<int, int> local;
                std::vector<int> verts;
                for (int q : members[static_cast<size_t>(cid)])
                    if (!accepting[static_cast<size_t>(q)]) {
                        local.emplace(q, static_cast<int>(verts.size()));
                        verts.push_back(q);
                    }
                if (verts.empty()) continue;
                // DFS-based cycle detection on the restriction
                std::vector<std::vector<int>> adj(verts.size());
                for (int q : verts) {
                    auto [lo, hi] = out_range(q);
                    for (size_t e = lo; e < hi; ++e) {
                        auto it = local.find(transitions[e].to);
                        if (it != local.end())
                            adj[static_cast<size_t>(local[q])].push_back(it->second);
                    }
                }
                std::vector<int> color(verts.size(), 0);
                std::function<bool(int)> dfs = [&](int v) {
                    color[static_cast<size_t>(v)] = 1;
                    for (int w : adj[static_cast<size_t>(v)]) {
                        if (color[static_cast<size_t>(w)] == 1) return true;
                        if (color[static_cast<size_t>(w)] == 0 && dfs(w)) return true;
                    }
                    color[static_cast<size_t>(v)] = 2;
                    return false;
                };
                for (size_t v = 0; v < verts.size(); ++v)
                    if (color[v] == 0 && dfs(static_cast<int>(v))) {
                        info.has_rejecting_cycle[static_cast<size_t>(cid)] = true;
                        break;
                    }
            }
        }
        return info;
    }

    /// Weak: every SCC uniformly accepting or uniformly non-accepting.
    bool is_weak() const {
        auto info = scc();
        std::vector<int> seen(static_cast<size_t>(info.count), -1);
        for (int q = 0; q < num_states; ++q) {
            int cid = info.comp[static_cast<size_t>(q)];
            int a = accepting[static_cast<size_t>(q)] ? 1 : 0;
            if (seen[static_cast<size_t>(cid)] == -1)
                seen[static_cast<size_t>(cid)] = a;
            else if (seen[static_cast<size_t>(cid)] != a)
                return false;
        }
        return true;
    }

    /// Closed: every state on a cycle is accepting.
    bool is_closed() const {
        auto info = scc();
        for (int q = 0; q < num_states; ++q) {
            int cid = info.comp[static_cast<size_t>(q)];
            bool on_cycle = info.has_cycle[static_cast<size_t>(cid)];
            if (on_cycle && !accepting[static_cast<size_t>(q)]) {
                // state is on a cycle iff its SCC has a cycle (all SCC members are)
                return false;
            }
        }
        return true;
    }

    std::vector<bool> reachable() const {
        finalize();
        std::vector<bool> seen(static_cast<size_t>(num_states), false);
        std::vector<int> work = initial;
        for (int q : work) seen[static_cast<size_t>(q)] = true;
        while (!work.empty()) {
            int q = work.back();
            work.pop_back();
            auto [lo, hi] = out_range(q);
            for (size_t e = lo; e < hi; ++e) {
                int w = transitions[e].to;
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    work.push_back(w);
                }
            }
        }
        return seen;
    }

    /// States that can reach an accepting cycle (a "good" SCC).
    std::vector<bool> coaccessible() const {
        auto info = scc();
        std::vector<bool> good(static_cast<size_t>(num_states), false);
        for (int q = 0; q < num_states; ++q) {
            int cid = info.comp[static_cast<size_t>(q)];
            if (info.has_cycle[static_cast<size_t>(cid)] && info.has_accepting[static_cast<size_t>(cid)] &&
                accepting[static_cast<size_t>(q)]) {
                // good SCC needs an accepting state on a cycle; since the SCC
                // has a cycle, every member is on one
                good[static_cast<size_t>(q)] = true;
            }
        }
        // backward closure
        std::vector<std::vector<int>> radj(static_cast<size_t>(num_states));
        finalize();
        for (const auto& t : transitions) radj[static_cast<size_t>(t.to)].push_back(t.from);
        std::vector<int> work;
        for (int q = 0; q < num_states; ++q)
            if (good[static_cast<size_t>(q)]) work.push_back(q);
        std::vector<bool> co = good;
        while (!work.empty()) {
            int q = work.back();
            work.pop_back();
            for (int p : radj[static_cast<size_t>(q)])
                if (!co[static_cast<size_t>(p)]) {
                    co[static_cast<size_t>(p)] = true;
                    work.push_back(p);
                }
        }
        return co;
    }

    bool is_trim() const {
        auto r = reachable();
        auto c = coaccessible();
        for (int q = 0; q < num_states; ++q)
            if (!r[static_cast<size_t>(q)] || !c[static_cast<size_t>(q)]) return false;
        return true;
    }

    bool is_empty() const {
        auto r = reachable();
        auto info = scc();
        for (int q = 0; q < num_states; ++q) {
            if (!r[static_cast<size_t>(q)] || !accepting[static_cast<size_t>(q)]) continue;
            int cid = info.comp[static_cast<size_t>(q)];
            if (info.has_cycle[static_cast<size_t>(cid)]) return false;
        }
        return true;
    }

private:
    mutable bool dirty_ = true;
    mutable int cache_ = 0;
};

/// Ultimately periodic word of symbols, prefix . loop^omega.
struct SymbolWord {
    std::vector<Symbol> prefix;
    std::vector<Symbol> loop;  // nonempty

    SymbolWord() = default;
    SymbolWord(std::vector<Symbol> p, std::vector<Symbol> l)
        : prefix(std::move(p)), loop(std::move(l)) {
        if (loop.empty()) throw std::invalid_argument("empty loop");
        canonicalize();
    }

    const Symbol& at(size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return loop[(i - prefix.size()) % loop.size()];
    }
    size_t span() const { return prefix.size() + loop.size(); }

    void canonicalize() {
        for (size_t q = 1; q <= loop.size() / 2; ++q) {
            if (loop.size() % q != 0) continue;
            bool rep = true;
            for (size_t i = q; i < loop.size() && rep; ++i) rep = loop[i] == loop[i % q];
            if (rep) {
                loop.resize(q);
                break;
            }
        }
        while (!prefix.empty() && prefix.back() == loop.back()) {
            prefix.pop_back();
            loop.insert(loop.begin(), loop.back());
            loop.pop_back();
        }
    }
    bool operator==(const SymbolWord& o) const { return prefix == o.prefix && loop == o.loop; }
    bool operator<(const SymbolWord& o) const {
        return std::tie(prefix, loop) < std::tie(o.prefix, o.loop);
    }

    std::string str() const {
        std::ostringstream os;
        for (const auto& s : prefix) os << s.str();
        os << "(";
        for (const auto& s : loop) os << s.str();
        os << ")";
        return os.str();
    }
};

/// Lasso acceptance: does some run on prefix.loop^omega visit accepting
/// states infinitely often? Decided on the synchronized position graph.
inline bool accepts(const BuchiAutomaton& a, const SymbolWord& w) {
    a.finalize();
    size_t m = w.prefix.size(), total = m + w.loop.size();
    std::vector<int> symidx(total, -1);
    for (size_t i = 0; i < total; ++i) {
        auto id = a.alphabet.find(w.at(i));
        if (!id) return false;  // symbol not in alphabet: no transition can read it
        symidx[i] = *id;
    }
    auto node = [&](int q, size_t pos) { return q * static_cast<int>(total) + static_cast<int>(pos); };
    // forward reachability from initial states at position 0
    std::vector<bool> seen(static_cast<size_t>(a.num_states) * total, false);
    std::vector<std::pair<int, size_t>> work;
    for (int q : a.initial) {
        seen[static_cast<size_t>(node(q, 0))] = true;
        work.emplace_back(q, 0);
    }
    std::vector<std::pair<int, size_t>> nodes;
    while (!work.empty()) {
        auto [q, pos] = work.back();
        work.pop_back();
        nodes.emplace_back(q, pos);
        size_t next = pos + 1 == total ? m : pos + 1;
        for (int to : a.post(q, symidx[pos])) {
            if (!seen[static_cast<size_t>(node(to, next))]) {
                seen[static_cast<size_t>(node(to, next))] = true;
                work.emplace_back(to, next);
            }
        }
    }
    // build the product restricted to reached loop-region nodes and look for a
    // reachable accepting cycle
    BuchiAutomaton prod(Alphabet(0));
    std::map<std::pair<int, size_t>, int> id;
    Symbol tick = Symbol::tuple({});
    for (auto& n : nodes) {
        id.emplace(n, prod.add_state(a.accepting[static_cast<size_t>(n.first)]));
    }
    for (auto& [n, i] : id) {
        auto [q, pos] = n;
        size_t next = pos + 1 == total ? m : pos + 1;
        for (int to : a.post(q, symidx[pos])) {
            auto it = id.find({to, next});
            if (it != id.end()) prod.add_transition_idx(i, prod.alphabet.add(tick), it->second);
        }
    }
    std::vector<int> ini;
    for (int q : a.initial) {
        auto it = id.find({q, 0});
        if (it != id.end()) ini.push_back(it->second);
    }
    prod.set_initial(ini);
    return !prod.is_empty();
}

}  // namespace betarec
