#pragma once

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace betarec {

using Digit = int;

/// Infinite word pre.per^omega over integer digits, kept canonical:
/// primitive period, minimal preperiod.
struct EventuallyPeriodicWord {
    std::vector<Digit> pre;
    std::vector<Digit> per;  // nonempty

    EventuallyPeriodicWord() : per{0} {}
    EventuallyPeriodicWord(std::vector<Digit> p, std::vector<Digit> q)
        : pre(std::move(p)), per(std::move(q)) {
        if (per.empty()) throw std::invalid_argument("empty period");
        canonicalize();
    }
    static EventuallyPeriodicWord zeros() { return EventuallyPeriodicWord({}, {0}); }

    Digit at(size_t i) const {
        if (i < pre.size()) return pre[i];
        return per[(i - pre.size()) % per.size()];
    }
    size_t span() const { return pre.size() + per.size(); }

    EventuallyPeriodicWord shifted(size_t k) const {
        std::vector<Digit> p, q = per;
        for (size_t i = k; i < pre.size(); ++i) p.push_back(pre[i]);
        if (k > pre.size()) {
            size_t rot = (k - pre.size()) % per.size();
            q.clear();
            for (size_t i = 0; i < per.size(); ++i) q.push_back(per[(rot + i) % per.size()]);
        }
        return EventuallyPeriodicWord(std::move(p), std::move(q));
    }

    bool operator==(const EventuallyPeriodicWord& o) const { return pre == o.pre && per == o.per; }

    /// Lexicographic comparison as infinite sequences.
    int compare(const EventuallyPeriodicWord& o) const {
        size_t bound = std::max(pre.size(), o.pre.size()) +
                       std::lcm(per.size(), o.per.size());
        for (size_t i = 0; i < bound; ++i) {
            Digit a = at(i), b = o.at(i);
            if (a != b) return a < b ? -1 : 1;
        }
        return 0;
    }
    bool operator<(const EventuallyPeriodicWord& o) const { return compare(o) < 0; }

    bool is_zero_tail() const {
        for (Digit d : per)
            if (d != 0) return false;
        for (Digit d : pre)
            if (d != 0) return false;
        return true;
    }

    void canonicalize() {
        // primitive period
        for (size_t q = 1; q <= per.size() / 2; ++q) {
            if (per.size() % q != 0) continue;
            bool rep = true;
            for (size_t i = q; i < per.size() && rep; ++i) rep = per[i] == per[i % q];
            if (rep) {
                per.resize(q);
                break;
            }
        }
        // minimal preperiod: absorb matching tail symbols into the rotation
        while (!pre.empty() && pre.back() == per.back()) {
            pre.pop_back();
            per.insert(per.begin(), per.back());
            per.pop_back();
        }
    }
};

/// Pointed word u * v: finite integer part, eventually periodic fractional
/// part, one star. Sign coherence (all digits >= 0 or all <= 0) is the
/// caller's convention and checked where it matters.
struct PointedWord {
    std::vector<Digit> int_part;  // most significant first, at least {0}
    EventuallyPeriodicWord frac;

    PointedWord() : int_part{0} {}
    PointedWord(std::vector<Digit> ip, EventuallyPeriodicWord f)
        : int_part(std::move(ip)), frac(std::move(f)) {
        if (int_part.empty()) int_part.push_back(0);
        // no leading zero unless the integer part is just "0"
        while (int_part.size() > 1 && int_part.front() == 0) int_part.erase(int_part.begin());
    }

    bool operator==(const PointedWord& o) const {
        return int_part == o.int_part && frac == o.frac;
    }

    PointedWord negated() const {
        PointedWord w = *this;
        for (auto& d : w.int_part) d = -d;
        for (auto& d : w.frac.pre) d = -d;
        for (auto& d : w.frac.per) d = -d;
        return w;
    }

    /// Textual form used by the CLI and JSON: "101*01(01)" means
    /// 101 * 01 (01)^omega. Digits outside 0..9 (or negative) are written
    /// comma-separated.
    std::string str() const {
        bool plain = true;
        auto scan = [&](Digit d) { plain = plain && d >= 0 && d <= 9; };
        for (Digit d : int_part) scan(d);
        for (Digit d : frac.pre) scan(d);
        for (Digit d : frac.per) scan(d);
        std::ostringstream os;
        auto emit = [&](const std::vector<Digit>& ds) {
            for (size_t i = 0; i < ds.size(); ++i) {
                if (!plain && i) os << ",";
                os << ds[i];
            }
        };
        emit(int_part);
        os << "*";
        emit(frac.pre);
        bool zero_period = true;
        for (Digit d : frac.per) zero_period = zero_period && d == 0;
        if (!zero_period) {
            os << "(";
            emit(frac.per);
            os << ")";
        }
        return os.str();
    }

    static PointedWord parse(const std::string& s);
};

namespace detail {

inline std::vector<Digit> parse_digit_run(const std::string& s) {
    std::vector<Digit> out;
    if (s.find(',') != std::string::npos || s.find('-') != std::string::npos) {
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!tok.empty()) out.push_back(std::stoi(tok));
    } else {
        for (char ch : s) {
            if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit char in word");
            out.push_back(ch - '0');
        }
    }
    return out;
}

}  // namespace detail

inline PointedWord PointedWord::parse(const std::string& s) {
    auto star = s.find('*');
    if (star == std::string::npos || s.find('*', star + 1) != std::string::npos)
        throw std::invalid_argument("pointed word needs exactly one *");
    std::string ip = s.substr(0, star), rest = s.substr(star + 1);
    std::vector<Digit> pre, per{0};
    auto open = rest.find('(');
    if (open != std::string::npos) {
        auto close = rest.find(')');
        if (close == std::string::npos || close < open) throw std::invalid_argument("unbalanced period parens");
        pre = detail::parse_digit_run(rest.substr(0, open));
        per = detail::parse_digit_run(rest.substr(open + 1, close - open - 1));
        if (per.empty()) throw std::invalid_argument("empty period");
    } else {
        pre = detail::parse_digit_run(rest);
    }
    return PointedWord(detail::parse_digit_run(ip), EventuallyPeriodicWord(pre, per));
}

}  // namespace betarec
