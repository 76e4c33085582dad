#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "betarec/base_profile.hpp"

using namespace betarec;

namespace {

BasePtr golden() { return make_base(IntPolynomial::from_ints({-1, -1, 1}), Rat(1), Rat(2)); }
BasePtr tribonacci() { return make_base(IntPolynomial::from_ints({-1, -1, -1, 1}), Rat(1), Rat(2)); }

}  // namespace

TEST_CASE("polynomial basics") {
    auto p = IntPolynomial::from_ints({-1, -1, 1});  // x^2 - x - 1
    CHECK(p.degree() == 2);
    CHECK(p.is_monic());
    CHECK(p.eval(Rat(2)) == Rat(1));
    CHECK(p.eval(Rat(1)) == Rat(-1));
    CHECK(p.derivative() == IntPolynomial::from_ints({-1, 2}));
    auto sq = p * p;
    CHECK(sq.degree() == 4);
    auto q = sq.divide_monic(p);
    REQUIRE(q.has_value());
    CHECK(*q == p);
    CHECK_FALSE((sq + IntPolynomial::from_ints({1})).divide_monic(p).has_value());
}

TEST_CASE("sturm root counting") {
    auto p = IntPolynomial::from_ints({-1, -1, 1});
    SturmChain s(p);
    CHECK(s.count_roots(Rat(1), Rat(2)) == 1);
    CHECK(s.count_roots(Rat(-1), Rat(0)) == 1);
    CHECK(s.count_roots(Rat(0), Rat(1)) == 0);
    // (x^2-2)(x^2-3) has four real roots
    auto q = IntPolynomial::from_ints({-2, 0, 1}) * IntPolynomial::from_ints({-3, 0, 1});
    SturmChain sq(q);
    CHECK(sq.count_roots(Rat(-2), Rat(2)) == 4);
    CHECK(sq.count_roots(Rat(0), Rat(2)) == 2);
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible_monic(IntPolynomial::from_ints({-1, -1, 1})));
    CHECK(is_irreducible_monic(IntPolynomial::from_ints({-1, -1, -1, 1})));
    CHECK(is_irreducible_monic(IntPolynomial::from_ints({-1, 0, 0, -1, 1})));  // x^4-x^3-1
    CHECK_FALSE(is_irreducible_monic(IntPolynomial::from_ints({-2, 0, 1}) *
                                     IntPolynomial::from_ints({-3, 0, 1})));
    CHECK_FALSE(is_irreducible_monic(IntPolynomial::from_ints({1, 2, 1})));  // (x+1)^2
    CHECK_FALSE(is_irreducible_monic(IntPolynomial::from_ints({-1, 0, 1})));
    CHECK(is_irreducible_monic(IntPolynomial::from_ints({-2, 0, 1})));
    CHECK(is_irreducible_monic(IntPolynomial::linear(Int(7))));
}

TEST_CASE("field arithmetic in Q(phi)") {
    auto base = golden();
    auto phi = base->beta;
    // phi^2 = phi + 1
    CHECK(phi * phi == phi + Rat(1));
    // phi^{-1} + phi^{-2} = 1 exactly
    auto inv = phi.inverse();
    CHECK(inv + inv * inv == base->one());
    CHECK((phi.inverse() * phi) == base->one());
    // compare: phi vs 2 -> LT
    CHECK(phi.compare(base->elem(Rat(2))) < 0);
    CHECK(phi.compare(base->one()) > 0);
    CHECK(base->zero().compare(base->zero()) == 0);
    // floor of phi^3 = 4.236...
    CHECK(phi.pow(3).floor() == 4);
    CHECK((-phi).floor() == -2);
    CHECK(base->elem(Rat(7, 2)).floor() == 3);
}

TEST_CASE("field ring properties, randomized") {
    auto base = tribonacci();
    std::mt19937 rng(12345);
    auto rnd = [&]() {
        std::vector<Rat> c;
        for (int i = 0; i < 3; ++i)
            c.emplace_back(Rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4)));
        return FieldElement(base->field, std::move(c));
    };
    for (int it = 0; it < 100; ++it) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        int ab = a.compare(b);
        CHECK(b.compare(a) == -ab);
        CHECK(a.compare(a) == 0);
        if (!a.is_zero()) CHECK(a * a.inverse() == base->one());
    }
}

TEST_CASE("sign agrees with high-precision numerics") {
    auto base = golden();
    std::mt19937 rng(99);
    mpf_set_default_prec(256);
    // 50-digit approximation of phi via Newton on x^2-x-1
    mpf_class x(1.6), prev(0);
    while (abs(x - prev) > mpf_class(1e-60)) {
        prev = x;
        x = x - (x * x - x - 1) / (2 * x - 1);
    }
    for (int it = 0; it < 100; ++it) {
        std::vector<Rat> c;
        for (int i = 0; i < 2; ++i)
            c.emplace_back(Rat(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 9)));
        FieldElement e(base->field, c);
        if (e.is_zero()) continue;
        mpf_class v = mpf_class(mpq_class(c[0])) + mpf_class(mpq_class(c[1])) * x;
        if (abs(v) < 1e-40) continue;  // too close to call numerically
        CHECK(e.sign() == (v > 0 ? 1 : -1));
    }
}

TEST_CASE("pisot classification") {
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({-1, -1, 1})));      // phi
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({-1, -1, -1, 1})));  // tribonacci
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({-1, -1, 0, 1})));   // plastic number
    // second-smallest Pisot number: conjugate moduli .8192 and .9404, both < 1
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({-1, 0, 0, -1, 1})));
    // degree-4 Salem polynomial: conjugates on the unit circle
    CHECK_FALSE(is_pisot_polynomial(IntPolynomial::from_ints({1, -1, -1, -1, 1})));
    // x^2 - 3x + 1: phi^2, reciprocal pair but Pisot
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({1, -3, 1})));
    // x^2 - 3x - 1: root 3.30, conjugate -0.30
    CHECK(is_pisot_polynomial(IntPolynomial::from_ints({-1, -3, 1})));
    // x^2 - x - 3: root 2.30, conjugate -1.30 -> not Pisot
    CHECK_FALSE(is_pisot_polynomial(IntPolynomial::from_ints({-3, -1, 1})));
    for (long b = 2; b <= 20; ++b) CHECK(is_pisot_polynomial(IntPolynomial::linear(Int(b))));
}

TEST_CASE("make_base classification examples") {
    auto phi = golden();
    CHECK(phi->pisot);
    CHECK(phi->parry == ParryClass::simple);
    REQUIRE(phi->renyi.has_value());
    CHECK(phi->renyi->pre.empty());
    CHECK(phi->renyi->per == std::vector<Digit>{1, 0});
    CHECK(phi->max_digit == 1);

    auto two = make_integer_base(2);
    CHECK(two->parry == ParryClass::simple);
    CHECK(two->renyi->per == std::vector<Digit>{1});
    CHECK(two->max_digit == 1);

    auto trib = tribonacci();
    CHECK(trib->pisot);
    CHECK(trib->renyi->per == std::vector<Digit>{1, 1, 0});

    // non-simple Parry: x^2 - 3x + 1, root (3+sqrt5)/2, d*(1) = 2 1^omega
    auto ns = make_base(IntPolynomial::from_ints({1, -3, 1}), Rat(2), Rat(3));
    CHECK(ns->parry == ParryClass::non_simple);
    CHECK(ns->renyi->pre == std::vector<Digit>{2});
    CHECK(ns->renyi->per == std::vector<Digit>{1});

    CHECK_THROWS(make_base(IntPolynomial::from_ints({-1, 0, 1}), Rat(0), Rat(3)));   // reducible
    CHECK_THROWS(make_base(IntPolynomial::from_ints({-1, -1, 1}), Rat(-1), Rat(0)));  // root < 1
    CHECK_THROWS(make_base(IntPolynomial::from_ints({-2, -2, 2}), Rat(1), Rat(2)));   // non-monic
}

TEST_CASE("power base") {
    auto phi = golden();
    auto phi2 = make_power_base(phi, 2);
    CHECK(phi2->beta == phi->beta * phi->beta);
    CHECK(phi2->pisot);
    CHECK(phi2->parry == ParryClass::non_simple);
    CHECK(phi2->max_digit == 2);  // ceil(2.618) - 1
    CHECK(phi2->renyi->pre == std::vector<Digit>{2});
    CHECK(phi2->renyi->per == std::vector<Digit>{1});
}

TEST_CASE("multiplicative independence") {
    CHECK(is_mult_independent(Int(2), Int(3)));
    CHECK_FALSE(is_mult_independent(Int(4), Int(8)));
    CHECK_FALSE(is_mult_independent(Int(6), Int(6)));
    CHECK(is_mult_independent(Int(6), Int(12)));
    CHECK_FALSE(is_mult_independent(Int(27), Int(9)));
    CHECK_THROWS(is_mult_independent(Int(1), Int(2)));
}

TEST_CASE("eventually periodic word canonical form") {
    EventuallyPeriodicWord w({1, 0}, {1, 0, 1, 0});
    CHECK(w.per == std::vector<Digit>{1, 0});  // primitive
    CHECK(w.pre.empty());                      // preperiod absorbed
    EventuallyPeriodicWord a({}, {1, 0}), b({}, {0, 1});
    CHECK(a.compare(b) > 0);
    CHECK(a.shifted(1) == b);
    EventuallyPeriodicWord self({}, {1, 0});
    CHECK(self.compare(self) == 0);
}
