#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "betarec/beta_numeration.hpp"

using namespace betarec;

namespace {

BasePtr golden() {
    static BasePtr b = make_base(IntPolynomial::from_ints({-1, -1, 1}), Rat(1), Rat(2));
    return b;
}
BasePtr tribo() {
    static BasePtr b = make_base(IntPolynomial::from_ints({-1, -1, -1, 1}), Rat(1), Rat(2));
    return b;
}

FieldElement phi_elem(const Rat& a, const Rat& b) {
    return FieldElement(golden()->field, {a, b});
}

}  // namespace

TEST_CASE("paper expansions in base phi") {
    auto base = golden();
    // (1+sqrt5)/4 = phi/2 -> 0 * (100)^omega
    auto w1 = greedy_expand(phi_elem(Rat(0), Rat(1, 2)), *base);
    CHECK(w1.str() == "0*(100)");
    // 0 -> 0 * 0^omega
    CHECK(greedy_expand(base->zero(), *base).str() == "0*");
    // 1 -> 1 * 0^omega
    CHECK(greedy_expand(base->one(), *base).str() == "1*");
    // 2 + sqrt5 = 2 phi + 1 = phi^3 exactly: greedy is 1000*, the paper's
    // section 2.3 display is the quasi-greedy form 101*(01)
    auto w2 = greedy_expand(phi_elem(Rat(1), Rat(2)), *base);
    CHECK(w2.str() == "1000*");
    CHECK(quasi_greedy_expand(phi_elem(Rat(1), Rat(2)), *base).str() == "101*(01)");
    CHECK(quasi_greedy_expand(base->one(), *base).str() == "0*(10)");
    CHECK(value_of(quasi_greedy_expand(phi_elem(Rat(1), Rat(2)), *base), *base) ==
          phi_elem(Rat(1), Rat(2)));
    // phi itself
    CHECK(greedy_expand(base->beta, *base).str() == "10*");
    // negative values use overline digits
    auto wn = greedy_expand(-base->one(), *base);
    CHECK(wn.int_part == std::vector<Digit>{-1});
}

TEST_CASE("value_of inverts greedy_expand") {
    auto base = golden();
    CHECK(value_of(PointedWord::parse("0*(100)"), *base) == phi_elem(Rat(0), Rat(1, 2)));
    CHECK(value_of(PointedWord::parse("1*"), *base) == base->one());
    auto two = make_integer_base(2);
    CHECK(value_of(PointedWord::parse("0*(01)"), *two) == two->elem(Rat(1, 3)));
}

TEST_CASE("round trip on random field elements") {
    std::mt19937 rng(4242);
    std::vector<BasePtr> bases = {golden(), tribo(), make_integer_base(2), make_integer_base(3)};
    for (const auto& base : bases) {
        int deg = base->field->degree();
        for (int it = 0; it < 50; ++it) {
            std::vector<Rat> c(static_cast<size_t>(deg));
            for (auto& v : c) v = Rat(static_cast<long>(rng() % 39) - 19, 1 + static_cast<long>(rng() % 5));
            FieldElement x(base->field, c);
            // keep |x| < 10
            if (x.abs().compare(base->elem(Rat(10))) >= 0) continue;
            auto w = greedy_expand(x, *base);
            CHECK(value_of(w, *base) == x);
        }
    }
}

TEST_CASE("expansion digits are admissible") {
    auto base = golden();
    std::mt19937 rng(7);
    for (int it = 0; it < 40; ++it) {
        std::vector<Rat> c = {Rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7)),
                              Rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 7))};
        FieldElement x(base->field, c);
        if (x.sign() < 0) x = -x;
        if (x.compare(base->elem(Rat(10))) >= 0) continue;
        auto w = greedy_expand(x, *base);
        CHECK(is_admissible(w.frac, *base));
        for (Digit d : w.int_part) {
            CHECK(d >= 0);
            CHECK(d <= base->max_digit);
        }
    }
}

TEST_CASE("renyi star and gap constants") {
    CHECK(renyi_star(*golden()).per == std::vector<Digit>{1, 0});
    CHECK(admissibility_gap_constant(*golden()) == 2);
    CHECK(admissibility_gap_constant(*make_integer_base(2)) == 1);
    CHECK(admissibility_gap_constant(*tribo()) == 3);
}

TEST_CASE("admissibility examples") {
    auto base = golden();
    // (01)^omega is NOT admissible: its shift equals d*(1) = (10)^omega
    CHECK_FALSE(is_admissible(EventuallyPeriodicWord({}, {0, 1}), *base));
    CHECK(is_admissible(EventuallyPeriodicWord({}, {1, 0, 0}), *base));
    CHECK_FALSE(is_admissible(EventuallyPeriodicWord({1, 1}, {0}), *base));  // factor 11
    CHECK_FALSE(is_admissible(EventuallyPeriodicWord({}, {1, 0}), *base));   // equals d*
    CHECK(is_admissible(EventuallyPeriodicWord({}, {0}), *base));
    CHECK_THROWS(is_admissible(EventuallyPeriodicWord({}, {2}), *base));
}

TEST_CASE("gap constant property: sparse ones are admissible") {
    for (const auto& base : {golden(), tribo(), make_integer_base(2)}) {
        int k = admissibility_gap_constant(*base);
        // 0^k 1 0^k 1 ... periodically
        std::vector<Digit> per(static_cast<size_t>(k), 0);
        per.push_back(1);
        CHECK(is_admissible(EventuallyPeriodicWord({}, per), *base));
    }
}

TEST_CASE("expansion order matches value order") {
    auto base = golden();
    std::mt19937 rng(31);
    auto lex_pointed = [](const PointedWord& a, const PointedWord& b) {
        // compare as left-padded digit streams; valid for same-sign values
        size_t la = a.int_part.size(), lb = b.int_part.size();
        size_t len = std::max(la, lb);
        for (size_t i = 0; i < len; ++i) {
            Digit da = i < len - la ? 0 : a.int_part[i - (len - la)];
            Digit db = i < len - lb ? 0 : b.int_part[i - (len - lb)];
            if (da != db) return da < db ? -1 : 1;
        }
        return a.frac.compare(b.frac);
    };
    for (int it = 0; it < 100; ++it) {
        std::vector<Rat> c1 = {Rat(static_cast<long>(rng() % 15), 1 + static_cast<long>(rng() % 5)),
                               Rat(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3))};
        std::vector<Rat> c2 = {Rat(static_cast<long>(rng() % 15), 1 + static_cast<long>(rng() % 5)),
                               Rat(static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 3))};
        FieldElement x(base->field, c1), y(base->field, c2);
        int cv = x.compare(y);
        if (cv == 0) continue;
        auto wx = greedy_expand(x, *base), wy = greedy_expand(y, *base);
        CHECK(lex_pointed(wx, wy) == cv);
    }
}

TEST_CASE("pointed word parsing and printing") {
    auto w = PointedWord::parse("101*01(01)");
    CHECK(w.int_part == std::vector<Digit>{1, 0, 1});
    CHECK(w.str() == "101*(01)");  // canonical: preperiod absorbed
    auto neg = PointedWord::parse("-1,0,2*");
    CHECK(neg.int_part == std::vector<Digit>{-1, 0, 2});
    CHECK_THROWS(PointedWord::parse("101"));
    CHECK_THROWS(PointedWord::parse("1*2*3"));
}
