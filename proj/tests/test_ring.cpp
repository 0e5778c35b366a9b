#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "skolem/localization.hpp"
#include "skolem/ring.hpp"

using namespace skolem;

namespace {

MultiPoly random_poly(std::mt19937_64& rng, u64 q, std::size_t nvars, unsigned max_deg, int max_terms) {
    std::uniform_int_distribution<u64> coeff(0, q - 1);
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::vector<Term> ts;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < nvars; ++v) m.e[v] = deg(rng);
        ts.push_back({m, coeff(rng)});
    }
    return MultiPoly::from_terms(q, std::move(ts));
}

struct RingCase {
    u64 modulus;
    std::vector<std::string> vars;
    std::vector<std::string> gens;
};

std::vector<RingCase> sample_rings() {
    return {
        {4, {"x", "y"}, {"x^2 - 2*y", "y^2"}},
        {2, {"x", "y"}, {"x*y"}},
        {9, {"x"}, {"x^3 + 3*x"}},
        {8, {"x"}, {"4*x", "x^2 - 2"}},
        {4, {"x"}, {"x^2", "2*x"}},
        {3, {"x", "y"}, {"x^2 - y", "y^2 - x"}},
        {5, {"t"}, {}},
    };
}

}  // namespace

TEST(Groebner, SingleGeneratorIsItsOwnBasis) {
    auto R = QuotientRing::parse(2, {"x"}, {"x^2 - x"});
    const auto& b = R->ideal().groebner().basis();
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(to_string(b[0], R->variables()), "x^2 + x");
    EXPECT_TRUE(R->parse_elem("x^2 - x").is_zero());
}

TEST(Groebner, NonMonicGeneratorsOverZ4) {
    auto R = QuotientRing::parse(4, {"x"}, {"2*x", "x^2"});
    std::vector<std::string> b;
    for (const auto& g : R->ideal().groebner().basis()) b.push_back(to_string(g, R->variables()));
    EXPECT_NE(std::find(b.begin(), b.end(), "2*x"), b.end());
    EXPECT_NE(std::find(b.begin(), b.end(), "x^2"), b.end());
    EXPECT_TRUE(R->parse_elem("2*x^2").is_zero());
    EXPECT_FALSE(R->parse_elem("x").is_zero());
}

TEST(Groebner, MonomialIdeal) {
    auto R = QuotientRing::parse(2, {"x", "y"}, {"x*y"});
    EXPECT_TRUE(R->parse_elem("x^2*y").is_zero());
    EXPECT_EQ(R->parse_elem("x + y").str(), "x + y");
}

TEST(NormalForm, ReducesModuloIdempotentRelation) {
    auto R = QuotientRing::parse(3, {"x"}, {"x^2 - x"});
    EXPECT_EQ(R->parse_elem("x^3").str(), "x");
}

TEST(NormalForm, RejectsCompositeModulus) {
    EXPECT_THROW(Modulus::of(12), InvalidInput);
    EXPECT_THROW(QuotientRing::parse(12, {}, {}), InvalidInput);
    EXPECT_NO_THROW(Modulus::of(4));
}

TEST(NormalForm, RejectsModulusMismatch) {
    auto R = QuotientRing::parse(4, {"x"}, {});
    EXPECT_THROW(R->normal_form(MultiPoly::constant(8, 1)), InvalidInput);
}

TEST(ZeroDivisor, UnitIsNot) {
    for (const auto& rc : sample_rings()) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        EXPECT_EQ(is_zero_divisor(R->one()).verdict, Verdict::False) << R->describe();
    }
}

TEST(ZeroDivisor, ThreeModFourIsUnitAndZeroModThree) {
    auto R4 = QuotientRing::parse(4, {}, {});
    EXPECT_EQ(is_zero_divisor(R4->elem(3)).verdict, Verdict::False);
    auto R3 = QuotientRing::parse(3, {}, {});
    auto zd = is_zero_divisor(R3->elem(3));
    EXPECT_EQ(zd.verdict, Verdict::True);
    ASSERT_TRUE(zd.witness);
    EXPECT_FALSE(zd.witness->is_zero());
}

TEST(ZeroDivisor, VariableInCoordinateCross) {
    auto R = QuotientRing::parse(2, {"x", "y"}, {"x*y"});
    auto zd = is_zero_divisor(R->var(0));
    ASSERT_EQ(zd.verdict, Verdict::True);
    EXPECT_EQ(zd.witness->str(), "y");
    EXPECT_EQ(is_zero_divisor(R->parse_elem("x + y")).verdict, Verdict::False);
    EXPECT_EQ(is_zero_divisor(R->parse_elem("x + 1")).verdict, Verdict::False);
    EXPECT_EQ(is_zero_divisor(R->parse_elem("x^2 + x")).verdict, Verdict::True);
}

TEST(ZeroDivisor, InfinitePolynomialRing) {
    auto R = QuotientRing::parse(4, {"x"}, {});
    EXPECT_EQ(is_zero_divisor(R->parse_elem("x")).verdict, Verdict::False);
    auto zd = is_zero_divisor(R->parse_elem("2*x + 2"));
    ASSERT_EQ(zd.verdict, Verdict::True);
    EXPECT_TRUE((R->parse_elem("2*x + 2") * *zd.witness).is_zero());
}

TEST(Nilpotency, Examples) {
    auto R8 = QuotientRing::parse(8, {}, {});
    EXPECT_EQ(nilpotency_index(R8->elem(2), 100), 3u);
    EXPECT_EQ(nilpotency_index(R8->elem(0), 100), 1u);
    EXPECT_EQ(nilpotency_index(R8->elem(3), 100), std::nullopt);
    // 6 in Z/12 projects to 2 in Z/4 (index 2) and 0 in Z/3 (index 1).
    auto R4 = QuotientRing::parse(4, {}, {});
    auto R3 = QuotientRing::parse(3, {}, {});
    EXPECT_EQ(std::max(*nilpotency_index(R4->elem(6), 10), *nilpotency_index(R3->elem(6), 10)), 2u);
}

TEST(Nilpotency, CapIsRespected) {
    auto R = QuotientRing::parse(2, {"x"}, {"x^40"});
    EXPECT_EQ(nilpotency_index(R->var(0), 1000), 40u);
    EXPECT_EQ(nilpotency_index(R->var(0), 39), std::nullopt);
    EXPECT_THROW(nilpotency_index(R->var(0), 0), InvalidInput);
}

TEST(Fraction, Examples) {
    auto R2 = QuotientRing::parse(2, {"X"}, {});
    auto S = MultiplicativeSet::make(R2, {R2->var(0)});
    Fraction x_over_x(S, R2->var(0), {1});
    EXPECT_TRUE(x_over_x == Fraction::of(S, 1));
    auto inv = Fraction::inverse_of_generator(S, 0);
    EXPECT_TRUE((inv + inv).is_zero());
    EXPECT_TRUE(inv + inv == Fraction::of(S, 0));

    auto R4 = QuotientRing::parse(4, {}, {});
    auto S4 = MultiplicativeSet::make(R4, {R4->elem(3)});
    EXPECT_TRUE(Fraction::inverse_of_generator(S4, 0) == Fraction::of(S4, 3));
}

TEST(Fraction, RejectsZeroDivisor) {
    auto R = QuotientRing::parse(4, {"x"}, {});
    EXPECT_THROW(MultiplicativeSet::make(R, {R->elem(2)}), InvalidInput);
}

// ---------------------------------------------------------------------------
// Properties
// ---------------------------------------------------------------------------

TEST(RingProperties, NormalFormIsCanonical) {
    std::mt19937_64 rng(11);
    for (const auto& rc : sample_rings()) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        for (int it = 0; it < 60; ++it) {
            MultiPoly f = random_poly(rng, R->q(), rc.vars.size(), 4, 5);
            MultiPoly g = random_poly(rng, R->q(), rc.vars.size(), 4, 5);
            EXPECT_EQ(R->normal_form(f + g), R->normal_form(R->normal_form(f) + R->normal_form(g)));
            EXPECT_EQ(R->normal_form(f * g), R->normal_form(R->normal_form(f) * R->normal_form(g)));
            EXPECT_EQ(R->normal_form(R->normal_form(f)), R->normal_form(f));
        }
    }
}

TEST(RingProperties, IdealCombinationsReduceToZero) {
    std::mt19937_64 rng(12);
    for (const auto& rc : sample_rings()) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        const auto& gens = R->ideal().generators();
        for (int it = 0; it < 100; ++it) {
            MultiPoly comb(R->q());
            for (const auto& g : gens) comb = comb + random_poly(rng, R->q(), rc.vars.size(), 3, 4) * g;
            EXPECT_TRUE(R->normal_form(comb).is_zero()) << R->describe();
            // Adding a combination does not change the class.
            MultiPoly f = random_poly(rng, R->q(), rc.vars.size(), 3, 4);
            EXPECT_EQ(R->normal_form(f + comb), R->normal_form(f));
        }
    }
}

TEST(RingProperties, ZeroDivisorWitnessesVerify) {
    std::mt19937_64 rng(13);
    for (const auto& rc : sample_rings()) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        for (int it = 0; it < 40; ++it) {
            RingElem a = R->elem(random_poly(rng, R->q(), rc.vars.size(), 2, 3));
            auto zd = is_zero_divisor(a);
            if (zd.verdict == Verdict::True) {
                ASSERT_TRUE(zd.witness);
                EXPECT_FALSE(zd.witness->is_zero());
                EXPECT_TRUE((a * *zd.witness).is_zero());
            }
        }
    }
}

TEST(RingProperties, FiniteZeroDivisorsMatchEnumeration) {
    auto R = QuotientRing::parse(4, {"x"}, {"x^2", "2*x"});
    auto all = R->enumerate();
    ASSERT_EQ(all.size(), 8u);
    for (const auto& a : all) {
        bool brute = false;
        for (const auto& x : all)
            if (!x.is_zero() && (a * x).is_zero()) brute = true;
        EXPECT_EQ(is_zero_divisor(a).verdict == Verdict::True, brute) << a.str();
    }
}

TEST(RingProperties, NilpotencyIndexIsExact) {
    std::mt19937_64 rng(14);
    for (const auto& rc : sample_rings()) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        for (int it = 0; it < 40; ++it) {
            RingElem a = R->elem(random_poly(rng, R->q(), rc.vars.size(), 2, 3));
            auto l = nilpotency_index(a, default_nilpotency_cap(*R));
            if (!l) continue;
            EXPECT_TRUE(a.pow(*l).is_zero());
            if (*l > 1) EXPECT_FALSE(a.pow(*l - 1).is_zero());
        }
    }
}

TEST(RingProperties, FractionAxioms) {
    std::mt19937_64 rng(15);
    auto R = QuotientRing::parse(4, {"x"}, {});
    auto S = MultiplicativeSet::make(R, {R->parse_elem("x"), R->parse_elem("x + 1"), R->elem(3)});
    std::uniform_int_distribution<std::uint32_t> dexp(0, 2);
    auto rand_frac = [&] {
        RingElem n = R->elem(random_poly(rng, 4, 1, 3, 3));
        return Fraction(S, n, {dexp(rng), dexp(rng), dexp(rng)});
    };
    for (int it = 0; it < 200; ++it) {
        Fraction a = rand_frac(), b = rand_frac(), c = rand_frac();
        EXPECT_TRUE((a + b) + c == a + (b + c));
        EXPECT_TRUE((a * b) * c == a * (b * c));
        EXPECT_TRUE(a + b == b + a);
        EXPECT_TRUE(a * b == b * a);
        EXPECT_TRUE(a * (b + c) == a * b + a * c);
        EXPECT_TRUE(a - a == Fraction::of(S, 0));
    }
    for (int it = 0; it < 50; ++it) {
        RingElem r = R->elem(random_poly(rng, 4, 1, 3, 3));
        EXPECT_EQ(Fraction(S, r).is_zero(), r.is_zero());
        EXPECT_EQ(Fraction(S, r) == Fraction::of(S, 0), r.is_zero());
    }
}

TEST(RingProperties, FiniteInfoCountsElements) {
    auto R = QuotientRing::parse(8, {"x"}, {"4*x", "x^2 - 2"});
    ASSERT_TRUE(R->is_finite());
    auto all = R->enumerate();
    EXPECT_EQ(Integer(all.size()), R->finite_info()->size);
    std::unordered_set<RingElem, RingElemHash> seen(all.begin(), all.end());
    EXPECT_EQ(seen.size(), all.size());
    EXPECT_FALSE(QuotientRing::parse(2, {"x", "y"}, {"x*y"})->is_finite());
}
