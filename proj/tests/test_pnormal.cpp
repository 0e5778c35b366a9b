#include <gtest/gtest.h>

#include <random>

#include "skolem/pnormal.hpp"

using namespace skolem;

namespace {

ElementaryPNested nested(u64 p, u64 l, std::vector<Rational> a) { return ElementaryPNested::make(p, l, a); }

/// Definitional members in [lo, hi], exponents up to kmax.
std::set<Integer> brute(const ElementaryPNested& D, u64 kmax, const Integer& lo, const Integer& hi) {
    std::set<Integer> out;
    for (const auto& z : D.members_with_exponents_up_to(kmax))
        if (z >= lo && z <= hi) out.insert(z);
    return out;
}

ElementaryPNested random_nested(std::mt19937_64& rng) {
    static const u64 primes[] = {2, 3, 5};
    std::uniform_int_distribution<int> coef(-12, 12), arity(1, 2), step(1, 2), pick(0, 2), den(1, 3);
    for (;;) {
        u64 p = primes[pick(rng)];
        int M = den(rng);
        std::vector<Rational> a{Rational(coef(rng), M)};
        for (int i = 0, r = arity(rng); i < r; ++i) {
            int c = coef(rng);
            a.push_back(Rational(c == 0 ? 1 : c, M));
        }
        try {
            return nested(p, static_cast<u64>(step(rng)), a);
        } catch (const InvalidInput&) {
        }
    }
}

}  // namespace

TEST(Contains, Examples) {
    auto D = nested(2, 2, {1, 5, 1});
    EXPECT_TRUE(D.contains(22));
    EXPECT_FALSE(D.contains(11));
    auto H = nested(3, 1, {Rational(1, 2), Rational(1, 2)});
    EXPECT_TRUE(H.contains(2));
    EXPECT_TRUE(H.contains(1));
    EXPECT_FALSE(H.contains(3));
    EXPECT_THROW(nested(3, 1, {Rational(1, 2), 1}), InvalidInput);
}

TEST(ToDfa, PowersOfTwo) {
    auto D = nested(2, 1, {0, 1});
    const auto& A = D.dfa();
    EXPECT_EQ(A.size(), 3u);
    EXPECT_TRUE(A.accepts(4));
    EXPECT_FALSE(A.accepts(3));
    EXPECT_FALSE(A.accepts(0));
    for (int z = 0; z <= 4096; ++z) EXPECT_EQ(A.accepts(z), z > 0 && (z & (z - 1)) == 0) << z;
}

TEST(ToDfa, ProgressionAndSingleton) {
    auto three = dfa_progression(2, 3, 0);
    EXPECT_TRUE(three.accepts(6));
    EXPECT_FALSE(three.accepts(4));
    EXPECT_EQ(three.size(), 3u);
    auto five = dfa_finite(2, {5});
    for (int z = 0; z <= 4096; ++z) EXPECT_EQ(five.accepts(z), z == 5);
}

TEST(IntersectSameP, Examples) {
    auto pow2 = nested(2, 1, {0, 1}).dfa();
    EXPECT_EQ(dfa_product(pow2, pow2), pow2);
    auto one = dfa_product(pow2, dfa_progression(2, 4, 1));
    EXPECT_EQ(one, dfa_finite(2, {1}));
    EXPECT_EQ(one.enumerate_up_to(10000), std::vector<Integer>{1});
    EXPECT_EQ(dfa_product(dfa_progression(2, 3, 0), dfa_progression(2, 4, 0)), dfa_progression(2, 12, 0));
}

TEST(NormalizeSuccinct, Examples) {
    auto a = normalize_succinct_z(2, nested(3, 1, {0, 1}));
    ASSERT_EQ(a.parts.size(), 1u);
    EXPECT_EQ(std::get<ProgressionZ>(a.parts[0]), ProgressionZ::make(2, 1));
    auto b = normalize_succinct_z(3, nested(2, 1, {1, 1}));
    ASSERT_EQ(b.parts.size(), 2u);
    EXPECT_EQ(std::get<ProgressionZ>(b.parts[0]), ProgressionZ::make(3, 0));
    EXPECT_EQ(std::get<ProgressionZ>(b.parts[1]), ProgressionZ::make(3, 2));
    auto c = normalize_succinct_z(1, nested(5, 1, {7, 3}));
    ASSERT_EQ(c.parts.size(), 1u);
    EXPECT_EQ(std::get<ProgressionZ>(c.parts[0]).a, 1);
}

TEST(Enumerate, Examples) {
    auto D = nested(4, 1, {1, 5, 1});
    EXPECT_EQ(D.dfa().enumerate_up_to(30), (std::vector<Integer>{7, 10, 22, 25}));
    EXPECT_TRUE(dfa_none(2).is_empty());
    EXPECT_TRUE(dfa_product(nested(2, 1, {0, 1}).dfa(), dfa_progression(2, 8, 5)).is_empty());
    auto big = nested(2, 1, {0, 1}).dfa().next_member(Integer(1) << 100);
    ASSERT_TRUE(big);
    EXPECT_EQ(*big, Integer(1) << 100);
    EXPECT_EQ(*nested(2, 1, {0, 1}).dfa().next_member((Integer(1) << 100) + 1), Integer(1) << 101);
}

TEST(DfaBasics, AtLeastFiniteness) {
    auto ge = dfa_at_least(3, 100);
    for (int z = 0; z <= 1000; ++z) EXPECT_EQ(ge.accepts(z), z >= 100);
    EXPECT_FALSE(ge.is_finite());
    EXPECT_TRUE(dfa_finite(2, {1, 9, 1000}).is_finite());
    EXPECT_FALSE(nested(2, 1, {0, 1}).dfa().is_finite());
    EXPECT_FALSE(nested(2, 1, {1, 1}).dfa().is_finite());
    EXPECT_TRUE(dfa_product(nested(2, 1, {0, 1}).dfa(), dfa_progression(2, 3, 1)).is_finite() == false);
    auto comp = dfa_complement(dfa_progression(2, 3, 0));
    EXPECT_EQ(comp, dfa_product(dfa_all(2), dfa_progression(2, 3, 0), SetOp::AndNot));
}

TEST(PNormalProperties, DfaMatchesDefinition) {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 60; ++it) {
        auto D = random_nested(rng);
        u64 kmax = 26 / D.step() + 4;
        if (D.p() == 5) kmax = 12;
        auto expect = brute(D, kmax, 0, 4096);
        const auto& A = D.dfa();
        for (int z = 0; z <= 4096; ++z) ASSERT_EQ(A.accepts(z), expect.count(z) > 0) << D.str() << " z=" << z;
        auto neg = brute(D, kmax, -4096, -1);
        for (int z = -4096; z < 0; ++z) ASSERT_EQ(D.contains(z), neg.count(z) > 0) << D.str() << " z=" << z;
    }
}

TEST(PNormalProperties, ProductIsConjunction) {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 20; ++it) {
        auto D = random_nested(rng), E = random_nested(rng);
        while (E.p() != D.p()) E = random_nested(rng);
        auto P = dfa_product(D.dfa(), E.dfa());
        auto U = dfa_product(D.dfa(), E.dfa(), SetOp::Or);
        for (int z = 0; z <= 10000; ++z) {
            bool x = D.dfa().accepts(z), y = E.dfa().accepts(z);
            ASSERT_EQ(P.accepts(z), x && y);
            ASSERT_EQ(U.accepts(z), x || y);
        }
        auto members = P.enumerate_up_to(10000);
        std::vector<Integer> expect;
        for (int z = 0; z <= 10000; ++z)
            if (P.accepts(z)) expect.push_back(z);
        EXPECT_EQ(members, expect);
    }
}

TEST(PNormalProperties, NormalizeAgreesWithCosetSum) {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> mod(1, 12);
    for (int it = 0; it < 30; ++it) {
        auto D = random_nested(rng);
        Integer a = mod(rng);
        auto N = normalize_succinct_z(a, D);
        std::set<Integer> res;
        for (const auto& z : D.members_with_exponents_up_to(static_cast<u64>(a * D.denominator()) + 2))
            res.insert(floor_mod(z, a));
        for (int z = -10000; z <= 10000; z += 7) EXPECT_EQ(N.contains(z), res.count(floor_mod(z, a)) > 0);
    }
}

TEST(PNormalProperties, NestedProgressionIntersection) {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<int> mod(1, 10);
    for (int it = 0; it < 30; ++it) {
        auto D = random_nested(rng);
        auto P = ProgressionZ::make(mod(rng), mod(rng));
        auto parts = intersect_nested_progression(D, P);
        ASSERT_TRUE(parts);
        for (int z = -3000; z <= 3000; ++z) {
            bool got = std::any_of(parts->begin(), parts->end(), [&](const auto& E) { return E.contains(z); });
            ASSERT_EQ(got, D.contains(z) && P.contains(z)) << D.str() << " " << P.str() << " z=" << z;
        }
    }
}

TEST(PNormalProperties, CanonicalMinimization) {
    EXPECT_EQ(nested(4, 1, {0, 1}).dfa(), nested(2, 2, {0, 1}).dfa());
    auto even = nested(2, 2, {0, 1}).dfa(), odd = nested(2, 2, {0, 2}).dfa();
    EXPECT_EQ(dfa_product(even, odd, SetOp::Or), nested(2, 1, {0, 1}).dfa());
    EXPECT_EQ(dfa_product(dfa_progression(2, 6, 0), dfa_progression(2, 6, 3), SetOp::Or), dfa_progression(2, 3, 0));
    EXPECT_EQ(dfa_finite(3, {0, 4, 8}), dfa_product(dfa_finite(3, {0, 4, 8, 9}), dfa_progression(3, 4, 0)));
}
