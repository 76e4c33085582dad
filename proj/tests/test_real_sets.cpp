#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "betarec/real_sets.hpp"

using namespace betarec;

namespace {

BasePtr golden() {
    static BasePtr b = make_base(IntPolynomial::from_ints({-1, -1, 1}), Rat(1), Rat(2));
    return b;
}
BasePtr base2() {
    static BasePtr b = make_integer_base(2);
    return b;
}

FieldElement phi_elem(const Rat& a, const Rat& b) {
    return FieldElement(golden()->field, {a, b});
}

FieldElement random_elem(const BasePtr& base, std::mt19937& rng, long num_range = 8,
                         long den_range = 4) {
    std::vector<Rat> c(static_cast<size_t>(base->field->degree()));
    for (auto& v : c)
        v = Rat(static_cast<long>(rng() % (2 * num_range + 1)) - num_range,
                1 + static_cast<long>(rng() % den_range));
    return FieldElement(base->field, c);
}

}  // namespace

TEST_CASE("bertrand automaton for phi is the paper figure") {
    auto b = bertrand_automaton(*golden());
    BuchiAutomaton fig(Alphabet(1));
    int A = fig.add_state(true), B = fig.add_state(true);
    fig.add_transition(A, Symbol::single(0), A);
    fig.add_transition(A, Symbol::single(1), B);
    fig.add_transition(B, Symbol::single(0), A);
    fig.set_initial({A});
    CHECK(b.num_states == 2);
    CHECK(isomorphic(b, fig));
    auto b2 = bertrand_automaton(*base2());
    CHECK(b2.num_states == 1);
    CHECK(b2.is_deterministic());
}

TEST_CASE("universe membership") {
    auto u1 = universe(golden(), 1);
    std::mt19937 rng(8);
    for (int it = 0; it < 50; ++it) {
        auto x = random_elem(golden(), rng);
        CHECK(member(u1, {x}));
    }
    CHECK(member(u1, {phi_elem(Rat(1), Rat(2))}));
    auto u2 = universe(golden(), 2);
    CHECK(member(u2, {phi_elem(Rat(0), Rat(1, 2)), phi_elem(Rat(1), Rat(2))}));
}

TEST_CASE("synchronized pair of the paper") {
    auto ws = synchronize(golden(), {phi_elem(Rat(0), Rat(1, 2)), phi_elem(Rat(1), Rat(2))}, true);
    CHECK(ws[0].int_part == std::vector<Digit>{0, 0, 0});
    CHECK(ws[0].frac.per == std::vector<Digit>{1, 0, 0});
    CHECK(ws[1].int_part == std::vector<Digit>{1, 0, 1});
    CHECK(ws[1].frac.per == std::vector<Digit>{0, 1});
    auto ws2 = synchronize(golden(), {phi_elem(Rat(0), Rat(1, 2)), phi_elem(Rat(-1, 2), Rat(0))});
    CHECK(ws2[0].int_part == std::vector<Digit>{0});
    CHECK(ws2[1].int_part == std::vector<Digit>{0});
}

TEST_CASE("order relation") {
    auto lt = order_relation(golden());
    std::mt19937 rng(21);
    for (int it = 0; it < 50; ++it) {
        auto x = random_elem(golden(), rng), y = random_elem(golden(), rng);
        bool expect = x.compare(y) < 0;
        CHECK(member(lt, {x, y}) == expect);  // NOLINT
        CHECK_FALSE(member(lt, {x, x}));
    }
    CHECK(member(lt, {phi_elem(Rat(1, 2), Rat(0)), phi_elem(Rat(1), Rat(0))}));
    CHECK(member(lt, {phi_elem(Rat(-1), Rat(0)), phi_elem(Rat(1, 2), Rat(0))}));
    for (int it = 0; it < 50; ++it) {
        auto a = random_elem(golden(), rng), b = random_elem(golden(), rng),
             c = random_elem(golden(), rng);
        bool ab = member(lt, {a, b}), ba = member(lt, {b, a});
        CHECK_FALSE((ab && ba));
        if (a != b) CHECK(ab != ba);
        if (ab && member(lt, {b, c})) CHECK(member(lt, {a, c}));
    }
}

TEST_CASE("addition relation") {
    auto add = add_relation(golden());
    std::mt19937 rng(33);
    for (int it = 0; it < 60; ++it) {
        auto x = random_elem(golden(), rng, 4), y = random_elem(golden(), rng, 4);
        auto z = x + y;
        CHECK(member(add, {x, y, z}));
        CHECK(member(add, {x, FieldElement::zero(golden()->field), x}));
        auto zbad = z + FieldElement::one(golden()->field);
        CHECK_FALSE(member(add, {x, y, zbad}));
    }
    auto inv = golden()->beta.inverse();
    CHECK(member(add, {inv, inv * inv, golden()->one()}));
    auto add2 = add_relation(base2());
    CHECK(member(add2, {base2()->elem(Rat(1, 2)), base2()->elem(Rat(1, 2)), base2()->one()}));
}

TEST_CASE("beta integers") {
    auto zb = beta_integers(golden(), 1);
    auto phi = golden()->beta;
    CHECK(member(zb, {phi * phi}));
    CHECK(member(zb, {golden()->zero()}));
    CHECK(member(zb, {phi.pow(3)}));
    CHECK(member(zb, {-phi}));
    CHECK_FALSE(member(zb, {golden()->elem(Rat(1, 2))}));
    CHECK_FALSE(member(zb, {golden()->elem(Rat(2))}));
    auto zb2 = beta_integers(base2(), 1);
    CHECK(member(zb2, {base2()->elem(Rat(5))}));
    CHECK_FALSE(member(zb2, {base2()->elem(Rat(5, 2))}));
}

TEST_CASE("set algebra and padding") {
    auto u = universe(golden(), 1);
    auto zb = beta_integers(golden(), 1);
    auto comp = complement_set(zb);
    CHECK(member(comp, {golden()->elem(Rat(1, 2))}));
    CHECK_FALSE(member(comp, {golden()->one()}));
    auto both = intersect_sets(zb, comp);
    CHECK(both.machine.is_empty());
    auto all = union_sets(zb, comp);
    CHECK(equivalent(all.machine, u.machine));
    std::mt19937 rng(3);
    for (int it = 0; it < 20; ++it) {
        auto x = random_elem(golden(), rng);
        CHECK(member(u, {x}));
        bool mz = member(zb, {x});
        CHECK(member(comp, {x}) == !mz);
    }
    auto exact = canonical_pad(zb, PaddingMode::exact);
    auto back = canonical_pad(exact, PaddingMode::zero_padded);
    CHECK(equivalent(back.machine, zb.machine));
}

TEST_CASE("padding conventions concretely") {
    auto u = universe(golden(), 1);
    auto eq1 = linear_atom_int(*golden(), 1, {1}, Rat(-1), LinearRel::EQ);
    RealSetAutomaton one{golden(), 1, reduce(intersect(eq1, u.machine)), PaddingMode::zero_padded};
    auto w_plain = tuple_word({PointedWord::parse("1*")});
    // "001*" with the padding kept (the PointedWord type strips leading zeros)
    SymbolWord w_pad({Symbol::single(0), Symbol::single(0), Symbol::single(1), Symbol::star_sym()},
                     {Symbol::single(0)});
    CHECK(accepts(one.machine, w_plain));
    CHECK(accepts(one.machine, w_pad));
    CHECK(accepts(one.machine, tuple_word({PointedWord::parse("0*(10)")})));
    auto exact = canonical_pad(one, PaddingMode::exact);
    CHECK(accepts(exact.machine, w_plain));
    CHECK_FALSE(accepts(exact.machine, w_pad));
}

TEST_CASE("shift by base") {
    auto u = universe(golden(), 1);
    auto eq1 = linear_atom_int(*golden(), 1, {1}, Rat(-1), LinearRel::EQ);
    RealSetAutomaton one{golden(), 1, reduce(intersect(eq1, u.machine)), PaddingMode::zero_padded};
    auto up = shift_by_base(one, true);
    CHECK(member(up, {golden()->beta}));
    CHECK_FALSE(member(up, {golden()->one()}));
    auto down = shift_by_base(up, false);
    CHECK(member(down, {golden()->one()}));
    CHECK(equivalent(down.machine, one.machine));
    auto ge0 = linear_atom_int(*golden(), 1, {-1}, Rat(0), LinearRel::LE);
    auto le1 = linear_atom_int(*golden(), 1, {1}, Rat(-1), LinearRel::LE);
    RealSetAutomaton unit{golden(), 1, reduce(intersect(reduce(intersect(ge0, le1)), u.machine)),
                          PaddingMode::zero_padded};
    auto scaled = shift_by_base(unit, true);
    CHECK(member(scaled, {golden()->beta}));
    CHECK(member(scaled, {phi_elem(Rat(0), Rat(1, 2))}));
    CHECK_FALSE(member(scaled, {phi_elem(Rat(1), Rat(1))}));
    CHECK(member(scaled, {golden()->elem(Rat(8, 5))}));
}

TEST_CASE("saturation restores value consistency") {
    BuchiAutomaton m(signed_tuple_alphabet(*golden(), 1));
    int a = m.add_state(false), b = m.add_state(false), c = m.add_state(true);
    m.add_transition(a, Symbol::single(1), b);
    m.add_transition(b, Symbol::star_sym(), c);
    m.add_transition(c, Symbol::single(0), c);
    m.set_initial({a});
    RealSetAutomaton partial{golden(), 1, m, PaddingMode::zero_padded};
    CHECK_FALSE(accepts(partial.machine, tuple_word({PointedWord::parse("0*(10)")})));
    auto sat = saturate_set(partial);
    CHECK(accepts(sat.machine, tuple_word({PointedWord::parse("0*(10)")})));
    CHECK(accepts(sat.machine, tuple_word({PointedWord::parse("01*")})));
    CHECK(member(sat, {golden()->one()}));
    CHECK_FALSE(member(sat, {golden()->beta}));
}

TEST_CASE("power set automaton") {
    auto pw = power_set_automaton(golden());
    auto phi = golden()->beta;
    CHECK(member(pw, {phi}));
    CHECK(member(pw, {golden()->one()}));
    CHECK(member(pw, {phi.pow(3)}));
    CHECK(member(pw, {phi.inverse()}));
    CHECK(member(pw, {phi.pow(-2)}));
    CHECK_FALSE(member(pw, {golden()->elem(Rat(3))}));
    CHECK_FALSE(member(pw, {golden()->elem(Rat(1, 2))}));
    CHECK_FALSE(member(pw, {-phi}));
    CHECK_FALSE(member(pw, {golden()->zero()}));
    CHECK(accepts(pw.machine, tuple_word({PointedWord::parse("0*(10)")})));
}

TEST_CASE("digit predicate") {
    auto phi = golden()->beta;
    auto x1 = digit_predicate(golden(), 1);
    auto x0 = digit_predicate(golden(), 0);
    CHECK(member(x1, {phi * phi, phi * phi}));
    CHECK_FALSE(member(x0, {phi * phi, phi * phi}));
    CHECK(member(x0, {golden()->elem(Rat(1, 2)), phi.pow(3)}));
    CHECK_FALSE(member(x1, {phi * phi, golden()->elem(Rat(3))}));
    CHECK(member(x1, {golden()->elem(Rat(1, 2)), phi.pow(-2)}));
    CHECK_FALSE(member(x1, {golden()->elem(Rat(1, 2)), phi.pow(-1)}));
    CHECK(member(x0, {golden()->elem(Rat(1, 2)), phi.pow(-1)}));
    auto xm1 = digit_predicate(golden(), -1);
    CHECK(member(xm1, {-(phi * phi), phi * phi}));
    CHECK_FALSE(member(x1, {-(phi * phi), phi * phi}));
    auto b2x1 = digit_predicate(base2(), 1);
    auto b2x0 = digit_predicate(base2(), 0);
    auto e = [&](long v) { return base2()->elem(Rat(v)); };
    CHECK(member(b2x1, {e(5), e(4)}));
    CHECK(member(b2x0, {e(5), e(2)}));
    CHECK(member(b2x1, {e(5), e(1)}));
    CHECK_FALSE(member(b2x1, {e(5), e(2)}));
    CHECK_FALSE(member(b2x0, {e(5), e(4)}));
}

TEST_CASE("star discipline and sign coherence of sampled words") {
    auto u = universe(golden(), 2);
    auto words = enumerate_words(u.machine, 60);
    CHECK(words.size() >= 20);
    for (const auto& w : words) {
        int stars = 0;
        for (size_t i = 0; i < w.prefix.size(); ++i)
            if (w.prefix[i].star) ++stars;
        for (const auto& s : w.loop) CHECK_FALSE(s.star);
        CHECK(stars == 1);
        for (int t = 0; t < 2; ++t) {
            bool pos = false, neg = false;
            for (size_t i = 0; i < w.prefix.size() + w.loop.size(); ++i) {
                const Symbol& s = i < w.prefix.size() ? w.prefix[i] : w.loop[i - w.prefix.size()];
                if (s.star) continue;
                if (s.digits[static_cast<size_t>(t)] > 0) pos = true;
                if (s.digits[static_cast<size_t>(t)] < 0) neg = true;
            }
            CHECK_FALSE((pos && neg));
        }
    }
}
