#include <gtest/gtest.h>

#include <random>
#include <set>

#include "skolem/crossprime.hpp"

using namespace skolem;

namespace {

AutomaticN of_parts(u64 p, std::vector<PNormalPart> parts, Integer threshold = 0) {
    PNormalN s;
    s.threshold = threshold;
    s.tail.p = p;
    s.tail.parts = std::move(parts);
    return AutomaticN::symbolic(p, std::move(s));
}

AutomaticN nested_set(u64 p, std::vector<Rational> a) { return of_parts(p, {ElementaryPNested::make(p, 1, a)}); }

AutomaticN progression(u64 p, Integer a, Integer b) { return of_parts(p, {ProgressionZ::make(a, b)}); }

std::vector<Integer> members(const MixedUnion& U, const Integer& hi) {
    std::set<Integer> s;
    for (const auto& c : U.components)
        for (const auto& z : c.set.enumerate_up_to(hi)) s.insert(z);
    return {s.begin(), s.end()};
}

}  // namespace

TEST(TwoPower, Examples) {
    TwoPowerEquation e1{2, 3, {1}, {-1}, 1};
    auto r1 = solve_two_power_equation(e1);
    std::vector<TwoPowerSolution> want{{{1}, {0}}, {{2}, {1}}};
    EXPECT_EQ(r1.solutions, want);
    EXPECT_FALSE(r1.cert.proven);

    TwoPowerEquation e2{2, 3, {1}, {}, 8};
    auto r2 = solve_two_power_equation(e2);
    ASSERT_EQ(r2.solutions.size(), 1u);
    EXPECT_EQ(r2.solutions[0].n, std::vector<u64>{3});
    EXPECT_TRUE(r2.cert.proven);

    TwoPowerEquation e3{2, 3, {1}, {1}, 0};
    auto r3 = solve_two_power_equation(e3);
    EXPECT_TRUE(r3.solutions.empty());
    EXPECT_TRUE(r3.cert.proven);
}

TEST(TwoPower, PartialSumBound) {
    EXPECT_FALSE(partial_sum_bound({2, 3, {1}, {-1}, 1}).has_value());
    EXPECT_EQ(partial_sum_bound({2, 3, {1}, {}, 8}), Integer(8));
    EXPECT_EQ(partial_sum_bound({2, 3, {1, 1}, {1}, 100}), Integer(100));
}

TEST(IntersectTwo, Examples) {
    auto u = intersect_two(nested_set(2, {0, 1}), nested_set(3, {0, 1}));
    EXPECT_EQ(members(u, 1000000), std::vector<Integer>{1});
    EXPECT_EQ(u.cert().proven, false);

    auto v = intersect_two(nested_set(2, {1, 1}), nested_set(3, {0, 1}));
    EXPECT_EQ(members(v, 1000000), (std::vector<Integer>{3, 9}));

    auto w = intersect_two(progression(2, 4, 1), progression(3, 6, 3));
    EXPECT_TRUE(w.cert().proven);
    for (Integer z = 0; z < 200; ++z) EXPECT_EQ(w.contains(z), z % 12 == 9);
}

TEST(IntersectMulti, Examples) {
    auto all = [](u64 p) { return MixedComponent{progression(p, 1, 0), Certification::proof()}; };
    auto mult = [](u64 p, u64 a) { return MixedComponent{progression(p, a, 0), Certification::proof()}; };
    auto one = intersect_multi({{nested_set(2, {0, 1}), Certification::proof()},
                                {nested_set(3, {0, 1}), Certification::proof()},
                                {nested_set(5, {0, 1}), Certification::proof()}});
    EXPECT_EQ(members(one, 100000), std::vector<Integer>{1});

    auto n = intersect_multi({all(2), all(3), all(5)});
    EXPECT_TRUE(n.cert().proven);
    for (Integer z = 0; z < 100; ++z) EXPECT_TRUE(n.contains(z));

    auto s = intersect_multi({mult(2, 3), mult(3, 4), mult(5, 5)});
    EXPECT_TRUE(s.cert().proven);
    for (Integer z = 0; z < 1000; ++z) EXPECT_EQ(s.contains(z), z % 60 == 0);
}

TEST(IntersectTwo, PowersAgreeWithBrute) {
    // {p^a} n {q^b} = {1} for independent p, q.
    for (u64 p = 2; p <= 100; ++p) {
        if (!as_prime_power(p)) continue;
        for (u64 q = 2; q <= 100; q += 7) {
            if (!as_prime_power(q) || !multiplicatively_independent(p, q)) continue;
            auto u = intersect_two(nested_set(p, {0, 1}), nested_set(q, {0, 1}), {16, 0});
            EXPECT_EQ(members(u, Integer(1) << 40), std::vector<Integer>{1}) << p << " " << q;
        }
    }
}

TEST(IntersectTwo, ProgressionsMatchCrtExhaustively) {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 40; ++it) {
        u64 a = 1 + rng() % 30, b = rng() % a, c = 1 + rng() % 30, d = rng() % c;
        auto u = intersect_two(progression(2, a, b), progression(3, c, d));
        EXPECT_TRUE(u.cert().proven);
        for (u64 z = 0; z <= 10000; ++z) ASSERT_EQ(u.contains(z), z % a == b && z % c == d) << a << b << c << d << z;
    }
}

TEST(IntersectTwo, SoundAndComplete) {
    std::mt19937_64 rng(9);
    const u64 ps[] = {2, 3, 5};
    for (int it = 0; it < 30; ++it) {
        u64 p = ps[rng() % 3], q = ps[rng() % 3];
        if (p == q) continue;
        auto X = nested_set(p, {Rational(int(rng() % 9)), 1});
        auto Y = rng() % 2 ? nested_set(q, {Rational(int(rng() % 9)), 1}) : progression(q, 1 + rng() % 6, rng() % 6);
        auto U = intersect_two(X, Y, {24, 0});
        const Integer hi = 200000;
        std::vector<Integer> want;
        for (const auto& z : X.enumerate_up_to(hi))
            if (Y.contains(z)) want.push_back(z);
        EXPECT_EQ(members(U, hi), want);
    }
}

TEST(TwoPower, ProvenStableUnderLargerBound) {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        TwoPowerEquation eq{2, 3, {Rational(1 + int(rng() % 5))}, {Rational(1 + int(rng() % 5))}, Rational(int(rng() % 2000))};
        auto r = solve_two_power_equation(eq, 12);
        ASSERT_TRUE(r.cert.proven);
        EXPECT_EQ(r.solutions, solve_two_power_equation(eq, 24).solutions);
    }
}
