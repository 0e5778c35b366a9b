#include <gtest/gtest.h>

#include <random>

#include "skolem/reduction.hpp"
#include "skolem/sunit.hpp"

using namespace skolem;

namespace {

SimpleSumEquation equation(const QuotientRing::Ptr& R, const std::vector<std::string>& c,
                           const std::vector<std::string>& b) {
    auto S = MultiplicativeSet::make(R, {});
    SimpleSumEquation eq;
    eq.ring = R;
    eq.p = R->prime();
    eq.e = R->exponent();
    for (std::size_t i = 0; i < c.size(); ++i) {
        eq.coeffs.push_back(R->parse_elem(c[i]));
        eq.bases.push_back(R->parse_elem(b[i]));
        eq.coeff_fractions.push_back(Fraction(S, eq.coeffs.back()));
        eq.base_fractions.push_back(Fraction(S, eq.bases.back()));
    }
    return eq;
}

std::vector<Integer> members_up_to(const PNormalN& s, u64 B) {
    std::vector<Integer> out;
    for (u64 z = 0; z <= B; ++z)
        if (s.contains(z)) out.push_back(z);
    return out;
}

/// Simple sums of an order-d recurrence over a ring of characteristic p^e, one primary component.
std::vector<SimpleSumEquation> pipeline(const LRS& L, ResidueSplit mode = ResidueSplit::Minimal) {
    auto split = split_char_poly(L.ring(), char_poly(L).poly);
    auto ext = L.map_to(split.extended_ring);
    auto comps = primary_split(split.extended_ring);
    EXPECT_EQ(comps.size(), 1u);
    auto eps = exp_poly_sum(ext, split.roots);
    std::vector<SimpleSumEquation> out;
    for (const auto& s : to_simple_sums(eps, L.ring()->prime(), L.ring()->exponent(), mode))
        out.push_back(clear_denominators(s, L.ring()->prime(), L.ring()->exponent()));
    return out;
}

LRS derksen() {
    auto R = QuotientRing::parse(2, {"X"}, {});
    return LRS::parse(R, {"0", "X^2 + X + 1", "X^2 + X"}, {"1", "0", "0"});
}

}  // namespace

TEST(FiniteBackend, Examples) {
    auto R4 = QuotientRing::parse(4, {}, {});
    auto a = zero_set_finite_ring(equation(R4, {"2"}, {"1"}));
    EXPECT_TRUE(a.cert.proven);
    EXPECT_TRUE(members_up_to(a.set, 100).empty());

    auto R5 = QuotientRing::parse(5, {}, {});
    auto b = zero_set_finite_ring(equation(R5, {"1", "-1"}, {"2", "3"}));
    EXPECT_TRUE(b.cert.proven);
    EXPECT_EQ(b.period, 2u);
    ASSERT_EQ(b.set.tail.parts.size(), 1u);
    EXPECT_EQ(std::get<ProgressionZ>(b.set.tail.parts[0]), ProgressionZ::make(2, 0));

    auto c = zero_set_finite_ring(equation(R5, {}, {}));
    EXPECT_EQ(members_up_to(c.set, 50).size(), 51u);
}

TEST(CertifyBackend, FastPaths) {
    auto R = QuotientRing::parse(2, {"X"}, {});
    auto single = zero_set_guess_certify(equation(R, {"1"}, {"X"}));
    EXPECT_TRUE(single.cert.proven);
    EXPECT_TRUE(members_up_to(single.set, 100).empty());
    auto constant = zero_set_guess_certify(equation(R, {"X + 1"}, {"1"}));
    EXPECT_TRUE(constant.cert.proven);
    EXPECT_TRUE(members_up_to(constant.set, 100).empty());
}

TEST(CertifyBackend, DerksenPowersOfTwo) {
    auto sums = pipeline(derksen());
    ASSERT_EQ(sums.size(), 1u);
    EXPECT_EQ(sums[0].bases.size(), 3u);
    auto cert = zero_set_guess_certify(sums[0]);
    EXPECT_FALSE(cert.cert.proven);
    EXPECT_EQ(cert.cert.bound, 4096);
    EXPECT_EQ(cert.method, "fit");
    ASSERT_EQ(cert.set.tail.parts.size(), 1u);
    const auto& D = std::get<ElementaryPNested>(cert.set.tail.parts[0]);
    EXPECT_EQ(D, ElementaryPNested::make(2, 1, {0, 1}));
    EXPECT_TRUE(cert.set.finite.empty());
    std::vector<Integer> expect;
    for (Integer z = 1; z <= 4096; z *= 2) expect.push_back(z);
    EXPECT_EQ(cert.observed, expect);
    EXPECT_EQ(members_up_to(cert.set, 4096), expect);
}

TEST(BruteZeroSet, Examples) {
    auto fib = [](u64 T) {
        Presentation P{T, {}, {}};
        std::vector<MultiPoly> one{MultiPoly::constant(T, 1), MultiPoly::constant(T, 1)};
        return crt_split(P, one, {MultiPoly::constant(T, 0), MultiPoly::constant(T, 1)});
    };
    EXPECT_EQ(brute_zero_set(fib(6), 100), (std::vector<u64>{0, 12, 24, 36, 48, 60, 72, 84, 96}));
    EXPECT_EQ(brute_zero_set(fib(4), 30), (std::vector<u64>{0, 6, 12, 18, 24, 30}));
    EXPECT_EQ(brute_zero_set(derksen(), 20), (std::vector<u64>{1, 2, 4, 8, 16}));
}

TEST(SunitProperties, FiniteBackendMatchesBruteForce) {
    std::mt19937_64 rng(51);
    std::vector<QuotientRing::Ptr> rings{QuotientRing::parse(8, {}, {}), QuotientRing::parse(9, {}, {}),
                                         QuotientRing::parse(4, {"x"}, {"x^2"})};
    for (int it = 0; it < 100; ++it) {
        const auto& R = rings[it % rings.size()];
        auto elems = R->enumerate();
        std::vector<RingElem> units;
        for (const auto& x : elems)
            if (finite_inverse(x)) units.push_back(x);
        std::uniform_int_distribution<std::size_t> pe(0, elems.size() - 1), pu(0, units.size() - 1);
        auto S = MultiplicativeSet::make(R, {});
        SimpleSumEquation eq;
        eq.ring = R;
        eq.p = R->prime();
        eq.e = R->exponent();
        for (int t = 0; t < 1 + it % 3; ++t) {
            eq.coeffs.push_back(elems[pe(rng)]);
            eq.bases.push_back(units[pu(rng)]);
            eq.coeff_fractions.push_back(Fraction(S, eq.coeffs.back()));
            eq.base_fractions.push_back(Fraction(S, eq.bases.back()));
        }
        // Independent period: smallest t with b^t = 1, by direct multiplication.
        u64 T = 1;
        for (const auto& b : eq.bases) {
            u64 t = 1;
            for (RingElem x = b; !x.is_one(); x *= b) ++t;
            T = std::lcm(T, t);
        }
        for (const auto& b : eq.bases) {
            EXPECT_EQ(b.pow(T), R->one());
            u64 z = rng() % 1000;
            EXPECT_EQ(b.pow(z + T), b.pow(z));
        }
        auto cert = zero_set_finite_ring(eq);
        for (u64 z = 0; z <= 3 * T; ++z) {
            RingElem v = R->zero();
            for (std::size_t i = 0; i < eq.bases.size(); ++i) v += eq.coeffs[i] * eq.bases[i].pow(z);
            ASSERT_EQ(cert.set.contains(z), v.is_zero()) << eq.str() << " z=" << z;
        }
    }
}

TEST(SunitProperties, CertifiedSetMatchesObservedZeros) {
    std::mt19937_64 rng(52);
    std::vector<QuotientRing::Ptr> rings{QuotientRing::parse(2, {"X"}, {}), QuotientRing::parse(3, {"X"}, {}),
                                         QuotientRing::parse(4, {"X"}, {})};
    std::vector<std::string> bases{"1", "X", "X + 1", "X^2 + 1", "-1", "2*X + 1", "X + 2"};
    std::vector<std::string> coeffs{"1", "-1", "X", "2", "X + 1", "-X"};
    std::uniform_int_distribution<std::size_t> pb(0, bases.size() - 1), pc(0, coeffs.size() - 1);
    for (int it = 0; it < 12; ++it) {
        const auto& R = rings[it % rings.size()];
        std::vector<std::string> c, b;
        for (int t = 0; t < 2 + it % 2; ++t) {
            c.push_back(coeffs[pc(rng)]);
            b.push_back(bases[pb(rng)]);
        }
        auto eq = equation(R, c, b);
        CertifyOptions opt;
        opt.bound = 256;
        auto cert = zero_set_guess_certify(eq, opt);
        std::vector<Integer> zeros;
        for (u64 z = 0; z <= 256; ++z)
            if (eq.value_at(z).is_zero()) zeros.push_back(z);
        if (cert.method != "identically-zero" && cert.method != "single-term") EXPECT_EQ(cert.observed, zeros);
        EXPECT_EQ(members_up_to(cert.set, 256), zeros) << eq.str();
    }
}
