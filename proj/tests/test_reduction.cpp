#include <gtest/gtest.h>

#include <random>

#include "skolem/exppoly.hpp"
#include "skolem/reduction.hpp"

using namespace skolem;

namespace {

Presentation presentation(u64 T, std::vector<std::string> vars, const std::vector<std::string>& gens) {
    Presentation P;
    P.characteristic = T;
    P.variables = std::move(vars);
    for (const auto& g : gens) P.ideal.push_back(parse_poly(g, P.variables, T));
    return P;
}

std::vector<MultiPoly> polys(const Presentation& P, const std::vector<std::string>& xs) {
    std::vector<MultiPoly> out;
    for (const auto& x : xs) out.push_back(parse_poly(x, P.variables, P.characteristic));
    return out;
}

UPoly<RingElem> upoly_of(const QuotientRing::Ptr& R, const std::vector<std::string>& coeffs) {
    UPoly<RingElem> f;
    for (const auto& c : coeffs) f.push_back(R->parse_elem(c));
    return f;
}

/// Split, decompose and expand one prime-power component; returns the sums per primary component.
std::vector<std::pair<LRS, ExpPolySum>> reduce(const LRS& L) {
    auto split = split_char_poly(L.ring(), char_poly(L).poly);
    auto ext = L.map_to(split.extended_ring);
    std::vector<std::pair<LRS, ExpPolySum>> out;
    for (const auto& comp : primary_split(split.extended_ring)) {
        auto Lc = ext.map_to(comp.ring);
        std::vector<std::pair<RingElem, unsigned>> roots;
        for (const auto& [r, m] : split.roots) roots.push_back({comp.ring->elem(r.poly()), m});
        out.push_back({Lc, exp_poly_sum(Lc, roots)});
    }
    return out;
}

}  // namespace

TEST(CrtSplit, Examples) {
    auto P6 = presentation(6, {}, {});
    auto c6 = crt_split(P6, polys(P6, {"1", "1"}), polys(P6, {"0", "1"}));
    ASSERT_EQ(c6.size(), 2u);
    EXPECT_EQ(c6[0].prime, 2u);
    EXPECT_EQ(c6[0].exponent, 1u);
    EXPECT_EQ(c6[1].prime, 3u);

    auto P4 = presentation(4, {}, {});
    auto c4 = crt_split(P4, polys(P4, {"1", "1"}), polys(P4, {"0", "1"}));
    ASSERT_EQ(c4.size(), 1u);
    EXPECT_EQ(c4[0].ring->q(), 4u);
}

TEST(CrtSplit, FibonacciModTwelveProjections) {
    auto P = presentation(12, {}, {});
    auto comps = crt_split(P, polys(P, {"1", "1"}), polys(P, {"0", "1"}));
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].ring->q(), 4u);
    EXPECT_EQ(comps[1].ring->q(), 3u);
    u64 a = 0, b = 1;
    auto s4 = terms(comps[0].lrs, 101), s3 = terms(comps[1].lrs, 101);
    for (u64 n = 0; n <= 100; ++n) {
        EXPECT_EQ(s4[n], comps[0].ring->elem(static_cast<i64>(a % 4)));
        EXPECT_EQ(s3[n], comps[1].ring->elem(static_cast<i64>(a % 3)));
        u64 c = (a + b) % 12;
        a = b;
        b = c;
    }
}

TEST(CrtSplit, ZeroTestMatchesDirectRepresentation) {
    auto P = presentation(12, {"x"}, {"x^2 - 1"});
    auto comps = crt_split(P, polys(P, {"1"}), polys(P, {"1"}));
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<u64> c(0, 11);
    for (int it = 0; it < 100; ++it) {
        // comb lies in the ideal; Z/12[x]/<x^2-1> is free on 1, x.
        MultiPoly comb = parse_poly("x^2 - 1", P.variables, 12) *
                         parse_poly(std::to_string(c(rng)) + "*x^3 + " + std::to_string(c(rng)), P.variables, 12);
        u64 a0 = it % 3 == 0 ? 0 : c(rng), a1 = it % 3 == 0 ? 0 : c(rng);
        MultiPoly r = comb + parse_poly(std::to_string(a0) + " + " + std::to_string(a1) + "*x", P.variables, 12);
        EXPECT_EQ(crt_is_zero(comps, r), a0 == 0 && a1 == 0);
    }
}

TEST(CrtSplit, CompositeZeroDivisorWitness) {
    auto P = presentation(12, {}, {});
    auto comps = crt_split(P, polys(P, {"1"}), polys(P, {"1"}));
    auto zd = crt_zero_divisor(P, comps, MultiPoly::constant(12, 3));
    ASSERT_EQ(zd.verdict, Verdict::True);
    EXPECT_EQ(zd.witness->constant_value(), 4u);
    EXPECT_EQ(crt_zero_divisor(P, comps, MultiPoly::constant(12, 5)).verdict, Verdict::False);
}

TEST(SplitCharPoly, AdjoinsRootOfIrreducibleQuadratic) {
    auto R = QuotientRing::parse(2, {}, {});
    auto s = split_char_poly(R, upoly_of(R, {"1", "1", "1"}));
    ASSERT_EQ(s.adjoined.size(), 1u);
    EXPECT_EQ(s.extended_ring->finite_info()->size, 4);
    ASSERT_EQ(s.roots.size(), 2u);
    EXPECT_EQ(s.roots[0].first.str(), "t1");
    EXPECT_EQ(s.roots[1].first.str(), "t1 + 1");
    EXPECT_EQ(s.roots[0].second, 1u);
}

TEST(SplitCharPoly, AlreadySplit) {
    auto R = QuotientRing::parse(4, {}, {});
    auto s = split_char_poly(R, upoly_of(R, {"1", "-2", "1"}));
    EXPECT_TRUE(s.adjoined.empty());
    ASSERT_EQ(s.roots.size(), 1u);
    EXPECT_TRUE(s.roots[0].first.is_one());
    EXPECT_EQ(s.roots[0].second, 2u);
}

TEST(SplitCharPoly, GenericAdjunction) {
    auto R = QuotientRing::parse(8, {}, {});
    auto f = upoly_of(R, {"-1", "0", "1"});
    auto g = split_char_poly(R, f, SplitStrategy::Generic);
    ASSERT_EQ(g.adjoined.size(), 1u);
    auto t = g.extended_ring->var(0);
    EXPECT_TRUE((t * t).is_one());
    ASSERT_EQ(g.roots.size(), 2u);
    EXPECT_EQ(g.roots[0].first, t);
    EXPECT_EQ(g.roots[1].first, -t);
    // The default strategy finds roots already present in Z/8.
    auto b = split_char_poly(R, f);
    EXPECT_TRUE(b.adjoined.empty());
    EXPECT_THROW(split_char_poly(R, upoly_of(R, {"1", "2"})), InvalidInput);
}

TEST(SplitCharPoly, ProductReproducesPolynomial) {
    std::mt19937_64 rng(32);
    std::vector<QuotientRing::Ptr> rings{QuotientRing::parse(4, {}, {}), QuotientRing::parse(3, {}, {}),
                                         QuotientRing::parse(2, {"x"}, {"x^2"}),
                                         QuotientRing::parse(2, {"X"}, {})};
    for (int it = 0; it < 30; ++it) {
        const auto& R = rings[it % rings.size()];
        std::uniform_int_distribution<i64> c(0, static_cast<i64>(R->q()) - 1);
        std::size_t d = 1 + it % 3;
        UPoly<RingElem> f;
        for (std::size_t i = 0; i < d; ++i) f.push_back(R->elem(c(rng)));
        f.push_back(R->one());
        auto s = split_char_poly(R, f);  // verifies the product internally
        unsigned total = 0;
        for (const auto& r : s.roots) total += r.second;
        EXPECT_EQ(total, d);
    }
}

TEST(PrimarySplit, CoordinateCross) {
    auto A = QuotientRing::parse(2, {"x", "y"}, {"x*y"});
    auto comps = primary_split(A);
    ASSERT_EQ(comps.size(), 2u);
    std::vector<std::string> descr;
    for (const auto& c : comps) {
        EXPECT_TRUE(c.primary_verified);
        descr.push_back(c.ring->describe());
    }
    std::sort(descr.begin(), descr.end());
    EXPECT_EQ(descr[0], "Z/2[x,y]/<x>");
    EXPECT_EQ(descr[1], "Z/2[x,y]/<y>");
}

TEST(PrimarySplit, LocalRingsStayWhole) {
    EXPECT_EQ(primary_split(QuotientRing::parse(4, {}, {})).size(), 1u);
    EXPECT_EQ(primary_split(QuotientRing::parse(2, {"x"}, {"x^2"})).size(), 1u);
    EXPECT_EQ(primary_split(QuotientRing::parse(2, {"X"}, {})).size(), 1u);
}

TEST(PrimarySplit, IdempotentsAreLifted) {
    auto A = QuotientRing::parse(4, {"x"}, {"x^2 - x"});
    auto comps = primary_split(A);
    ASSERT_EQ(comps.size(), 2u);
    for (const auto& c : comps) EXPECT_EQ(c.ring->finite_info()->size, 4);
}

TEST(PrimarySplit, UnsupportedWithoutDecomposition) {
    auto A = QuotientRing::parse(2, {"x", "y"}, {"x^2 + y^2 + x*y"});
    EXPECT_THROW(primary_split(A), UnsupportedDecomposition);
    auto comps = primary_split(QuotientRing::parse(2, {"x", "y"}, {"x*y"}), UserDecomposition{{"x"}, {"y"}});
    EXPECT_EQ(comps.size(), 2u);
    EXPECT_THROW(primary_split(QuotientRing::parse(2, {"x", "y"}, {"x*y"}), UserDecomposition{{"x"}, {"y^2 + 1"}}),
                 InvalidInput);
}

TEST(PrimarySplit, ElementsVanishingEverywhereAreZero) {
    std::vector<QuotientRing::Ptr> rings{QuotientRing::parse(3, {"x"}, {"x^3 - x"}),
                                         QuotientRing::parse(4, {"x"}, {"x^2 - x"}),
                                         QuotientRing::parse(2, {"x", "y"}, {"x^2 + x", "y^2 + y"})};
    for (const auto& A : rings) {
        auto comps = primary_split(A);
        for (const auto& a : A->enumerate()) {
            bool all = true;
            for (const auto& c : comps) all = all && c.ring->elem(a.poly()).is_zero();
            EXPECT_EQ(all, a.is_zero()) << A->describe() << " " << a.str();
        }
        // Products of one generator per component vanish in A.
        RingElem prod = A->one();
        for (const auto& c : comps) prod *= A->elem(c.ideal.front());
        EXPECT_TRUE(prod.is_zero());
    }
}

TEST(ExpPolySum, LinearSequenceOverZ4) {
    auto R = QuotientRing::parse(4, {}, {});
    auto L = LRS::parse(R, {"2", "-1"}, {"0", "2"});
    auto eps = exp_poly_sum(L, {{R->one(), 2}});
    EXPECT_EQ(eps.start, 0u);
    ASSERT_EQ(eps.terms.size(), 1u);
    EXPECT_TRUE(eps.terms[0].base.is_one());
    ASSERT_EQ(eps.terms[0].coeffs.size(), 2u);
    EXPECT_TRUE(eps.terms[0].coeffs[0].is_zero());
    EXPECT_TRUE(eps.terms[0].coeffs[1] == Fraction::of(eps.set(), 2));
}

TEST(ExpPolySum, OrderOneIsAlreadyInForm) {
    auto R = QuotientRing::parse(9, {}, {});
    auto L = LRS::parse(R, {"2"}, {"5"});
    auto eps = exp_poly_sum(L, {{R->elem(2), 1}});
    EXPECT_EQ(eps.start, 0u);
    ASSERT_EQ(eps.terms.size(), 1u);
    ASSERT_EQ(eps.terms[0].coeffs.size(), 1u);
    EXPECT_TRUE(eps.terms[0].coeffs[0] == Fraction::of(eps.set(), 5));
}

TEST(ExpPolySum, NilpotentDifferenceIdentity) {
    // 1/((1-Y)(1-3Y)) = 1/(1-3Y)^2 + 2Y/(1-3Y)^3 over Z/4.
    auto R = QuotientRing::parse(4, {}, {});
    auto D = classify_roots({{R->elem(1), 1}, {R->elem(3), 1}});
    EXPECT_FALSE(D.diff_unit[0][1]);
    EXPECT_EQ(D.diff_nil[0][1], 2u);
    auto pf = partial_fractions({Fraction::of(D.S, 1)}, D);
    ASSERT_EQ(pf.terms.size(), 2u);
    EXPECT_EQ(pf.terms[0].root, 1u);
    EXPECT_EQ(pf.terms[0].power, 2u);
    EXPECT_EQ(pf.terms[1].power, 3u);
    ASSERT_EQ(upoly::trim(pf.terms[1].numerator).size(), 2u);
    EXPECT_TRUE(pf.terms[1].numerator[1] == Fraction::of(D.S, 2));

    auto series = expand_series(pf, D, 500);
    u64 lhs = 0, p3 = 1;
    for (u64 n = 0; n < 500; ++n) {
        lhs = (lhs + p3) % 4;  // sum_{k<=n} 3^k
        // (n+1) 3^n + 2 C(n+1, 2) 3^(n-1)
        u64 rhs = ((n + 1) % 4 * p3) % 4;
        if (n >= 1) rhs = (rhs + 2 * (binomial_mod(n + 1, 2, 4) * powmod(3, n - 1, 4))) % 4;
        EXPECT_EQ(lhs, rhs);
        EXPECT_TRUE(series[n] == Fraction::of(D.S, static_cast<i64>(lhs))) << n;
        p3 = p3 * 3 % 4;
    }
}

TEST(ExpPolySum, TruncationIdentityOnRandomDenominators) {
    std::mt19937_64 rng(33);
    auto R = QuotientRing::parse(8, {}, {});
    std::uniform_int_distribution<int> pick(0, 7), mult(1, 2);
    for (int it = 0; it < 40; ++it) {
        std::vector<std::pair<RingElem, unsigned>> roots;
        for (int k = 0; k < 2 + it % 2; ++k) roots.push_back({R->elem(pick(rng)), static_cast<unsigned>(mult(rng))});
        RootData D;
        try {
            D = classify_roots(roots);
        } catch (const NilpotencyUndetermined&) {
            continue;
        }
        auto pf = partial_fractions({Fraction::of(D.S, 1)}, D);
        std::size_t d = 0;
        UPoly<Fraction> phi{Fraction::of(D.S, 1)};
        for (std::size_t i = 0; i < D.roots.size(); ++i)
            for (unsigned k = 0; k < D.multiplicity[i]; ++k, ++d)
                phi = upoly::mul(phi, UPoly<Fraction>{Fraction::of(D.S, 1), -Fraction(D.S, D.roots[i])},
                                 Fraction::of(D.S, 0));
        auto prod = upoly::mul(expand_series(pf, D, 3 * d), phi, Fraction::of(D.S, 0), 3 * d);
        EXPECT_TRUE(prod[0] == Fraction::of(D.S, 1));
        for (std::size_t k = 1; k < prod.size(); ++k) EXPECT_TRUE(prod[k].is_zero()) << it << " " << k;
    }
}

TEST(SimpleSums, LinearSequenceResidues) {
    auto R = QuotientRing::parse(4, {}, {});
    auto L = LRS::parse(R, {"2", "-1"}, {"0", "2"});
    auto eps = exp_poly_sum(L, {{R->one(), 2}});
    auto sums = to_simple_sums(eps, 2, 2);
    ASSERT_EQ(sums.size(), 4u);
    const i64 expect[] = {0, 2, 0, 2};
    for (std::size_t q = 0; q < 4; ++q) {
        ASSERT_EQ(sums[q].coeffs.size(), 1u);
        EXPECT_TRUE(sums[q].coeffs[0] == Fraction::of(eps.set(), expect[q]));
        EXPECT_TRUE(sums[q].bases[0] == Fraction::of(eps.set(), 1));
    }
}

TEST(SimpleSums, SingleTermFullSplit) {
    auto R = QuotientRing::parse(9, {}, {});
    auto L = LRS::parse(R, {"2"}, {"5"});
    auto eps = exp_poly_sum(L, {{R->elem(2), 1}});
    EXPECT_EQ(to_simple_sums(eps, 3, 2).size(), 1u);
    auto sums = to_simple_sums(eps, 3, 2, ResidueSplit::Full);
    ASSERT_EQ(sums.size(), 9u);
    for (u64 q = 0; q < 9; ++q)
        EXPECT_TRUE(sums[q].coeffs[0] == Fraction::of(eps.set(), static_cast<i64>(5 * powmod(2, q, 9) % 9)));
}

TEST(SimpleSums, DerksenBases) {
    auto R = QuotientRing::parse(2, {"X"}, {});
    auto L = LRS::parse(R, {"0", "X^2 + X + 1", "X^2 + X"}, {"1", "0", "0"});
    auto parts = reduce(L);
    ASSERT_EQ(parts.size(), 1u);
    const auto& eps = parts[0].second;
    EXPECT_EQ(eps.start, 0u);
    auto sums = to_simple_sums(eps, 2, 1, ResidueSplit::Full);
    ASSERT_EQ(sums.size(), 2u);
    std::vector<std::string> bases;
    for (const auto& b : sums[0].bases) bases.push_back(b.str());
    std::sort(bases.begin(), bases.end());
    EXPECT_EQ(bases, (std::vector<std::string>{"1", "X^2", "X^2 + 1"}));
    auto seq = terms(L, 402);
    for (const auto& s : sums)
        for (u64 z = 0; 2 * z + s.residue <= 400; ++z) {
            Fraction v = Fraction::of(eps.set(), 0);
            for (std::size_t i = 0; i < s.bases.size(); ++i) v += s.bases[i].pow(z) * s.coeffs[i];
            EXPECT_TRUE(v == Fraction(eps.set(), seq[2 * z + s.residue]));
        }
}

TEST(ReductionProperties, RandomFiniteRingReconstruction) {
    std::mt19937_64 rng(34);
    std::vector<QuotientRing::Ptr> rings{QuotientRing::parse(4, {}, {}), QuotientRing::parse(8, {}, {}),
                                         QuotientRing::parse(9, {}, {}),
                                         QuotientRing::parse(4, {"x"}, {"x^2", "2*x"}),
                                         QuotientRing::parse(3, {"x"}, {"x^2 - x"})};
    int checked = 0;
    for (int it = 0; it < 60; ++it) {
        const auto& R = rings[it % rings.size()];
        auto elems = R->enumerate();
        std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
        std::vector<RingElem> a, g;
        std::size_t d = 1 + it % 3;
        for (std::size_t i = 0; i < d; ++i) {
            a.push_back(elems[pick(rng)]);
            g.push_back(elems[pick(rng)]);
        }
        LRS L(R, a, g);
        for (auto& [Lc, eps] : reduce(L)) {
            auto sums = to_simple_sums(eps, R->prime(), R->exponent());
            auto seq = terms(Lc, eps.start + 3 * 200);
            for (const auto& s : sums)
                for (u64 z = s.start; s.period * z + s.residue < seq.size(); ++z) {
                    Fraction v = Fraction::of(eps.set(), 0);
                    for (std::size_t i = 0; i < s.bases.size(); ++i) v += s.bases[i].pow(z) * s.coeffs[i];
                    ASSERT_TRUE(v == Fraction(eps.set(), seq[s.period * z + s.residue])) << L.str();
                }
            ++checked;
        }
    }
    EXPECT_GT(checked, 50);
}
