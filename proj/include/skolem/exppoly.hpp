#pragma once

/**
 * @file exppoly.hpp
 * @brief Exponential-polynomial form of an LRS over a primary ring, and its
 *        splitting into simple exponential sums.
 *
 * Coefficients are kept in the binomial basis C(n, k) rather than n^k since
 * k! need not be invertible modulo p^e:
 *
 *     alpha_n = sum_i r_i^n sum_k c_ik C(n, k)      (n >= start)
 */

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/localization.hpp"
#include "skolem/lrs.hpp"
#include "skolem/numtheory.hpp"
#include "skolem/ring.hpp"
#include "skolem/upoly.hpp"

namespace skolem {

/// Zero-divisor data of the roots and their pairwise differences.
struct RootData {
    std::vector<RingElem> roots;
    std::vector<unsigned> multiplicity;
    std::vector<bool> unit;                          // root is a non-zero-divisor
    std::vector<u64> nil_index;                      // for the other roots
    std::vector<std::vector<bool>> diff_unit;        // r_i - r_j non-zero-divisor (i < j)
    std::vector<std::vector<u64>> diff_nil;          // nilpotency index otherwise
    MultiplicativeSet::Ptr S;
    std::vector<std::size_t> root_gen;               // index in S of r_i (unit roots)
    std::vector<std::vector<std::size_t>> diff_gen;  // index in S of r_i - r_j
};

struct ExpPolyOptions {
    std::optional<u64> nilpotency_cap;  // default derived from the ring
    GroebnerOptions groebner;
    std::size_t check_window = 200;
};

namespace detail {

inline u64 nilpotent_or_throw(const RingElem& a, u64 cap, const std::string& what) {
    auto l = nilpotency_index(a, cap);
    if (!l)
        throw NilpotencyUndetermined(what + " " + a.str() + " is a zero-divisor but not nilpotent within cap " +
                                     std::to_string(cap));
    return *l;
}

inline Verdict zd_verdict(const RingElem& a, const GroebnerOptions& opts) {
    auto zd = is_zero_divisor(a, opts);
    if (zd.verdict == Verdict::Unknown) throw ZeroDivisorUnknown("could not classify " + a.str());
    return zd.verdict;
}

} // namespace detail

/// Groups equal roots and classifies roots and differences; builds S.
inline RootData classify_roots(const std::vector<std::pair<RingElem, unsigned>>& roots, const ExpPolyOptions& opts = {}) {
    if (roots.empty()) throw InvalidInput("no roots to classify");
    RootData D;
    for (const auto& [r, m] : roots) {
        auto it = std::find(D.roots.begin(), D.roots.end(), r);
        if (it == D.roots.end()) {
            D.roots.push_back(r);
            D.multiplicity.push_back(m);
        } else {
            D.multiplicity[static_cast<std::size_t>(it - D.roots.begin())] += m;
        }
    }
    const auto& R = D.roots.front().ring();
    const u64 cap = opts.nilpotency_cap.value_or(default_nilpotency_cap(*R));
    const std::size_t s = D.roots.size();
    std::vector<RingElem> gens;
    D.unit.assign(s, false);
    D.nil_index.assign(s, 0);
    D.root_gen.assign(s, 0);
    for (std::size_t i = 0; i < s; ++i) {
        if (detail::zd_verdict(D.roots[i], opts.groebner) == Verdict::False) {
            D.unit[i] = true;
            D.root_gen[i] = gens.size();
            gens.push_back(D.roots[i]);
        } else {
            D.nil_index[i] = detail::nilpotent_or_throw(D.roots[i], cap, "root");
        }
    }
    D.diff_unit.assign(s, std::vector<bool>(s, false));
    D.diff_nil.assign(s, std::vector<u64>(s, 0));
    D.diff_gen.assign(s, std::vector<std::size_t>(s, 0));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            RingElem diff = D.roots[i] - D.roots[j];
            if (detail::zd_verdict(diff, opts.groebner) == Verdict::False) {
                D.diff_unit[i][j] = true;
                D.diff_gen[i][j] = gens.size();
                gens.push_back(diff);
            } else {
                D.diff_nil[i][j] = detail::nilpotent_or_throw(diff, cap, "root difference");
            }
        }
    D.S = MultiplicativeSet::make(R, gens, opts.groebner);
    return D;
}

struct PartialFractionTerm {
    std::size_t root;
    unsigned power;
    UPoly<Fraction> numerator;  // over (1 - r Y)^power
};

struct PartialFractions {
    std::vector<PartialFractionTerm> terms;
    UPoly<Fraction> polynomial;
};

/**
 * numerator / prod_i (1 - r_i Y)^{m_i} as a sum of single-root fractions.
 *
 * Denominator multiplicity vectors are processed in decreasing lexicographic
 * order; both rewriting steps produce strictly smaller vectors, so every
 * contribution to a vector is collected before the vector is expanded.
 */
inline PartialFractions partial_fractions(const UPoly<Fraction>& numerator, const RootData& D) {
    const auto& S = D.S;
    const Fraction zero = Fraction::of(S, 0);
    const std::size_t s = D.roots.size();
    std::map<std::vector<unsigned>, UPoly<Fraction>> work;
    work[D.multiplicity] = numerator;
    PartialFractions out;
    auto push = [&](std::vector<unsigned> key, const UPoly<Fraction>& num) {
        auto it = work.find(key);
        if (it == work.end()) work.emplace(std::move(key), num);
        else it->second = upoly::add(it->second, num, zero);
    };
    while (!work.empty()) {
        auto node = std::prev(work.end());
        std::vector<unsigned> key = node->first;
        UPoly<Fraction> num = upoly::trim(node->second);
        work.erase(node);
        if (num.empty()) continue;
        std::vector<std::size_t> support;
        for (std::size_t i = 0; i < s; ++i)
            if (key[i]) support.push_back(i);
        if (support.empty()) {
            out.polynomial = upoly::add(out.polynomial, num, zero);
            continue;
        }
        if (support.size() == 1) {
            out.terms.push_back({support[0], key[support[0]], num});
            continue;
        }
        std::optional<std::pair<std::size_t, std::size_t>> pick;
        for (std::size_t a = 0; a < support.size() && !pick; ++a)
            for (std::size_t b = a + 1; b < support.size() && !pick; ++b)
                if (D.diff_unit[support[a]][support[b]]) pick = {support[a], support[b]};
        if (pick) {
            // 1/((1-r_i Y)(1-r_j Y)) = (r_i/(1-r_i Y) - r_j/(1-r_j Y)) / (r_i - r_j)
            auto [i, j] = *pick;
            Fraction inv = Fraction::inverse_of_generator(S, D.diff_gen[i][j]);
            auto ki = key, kj = key;
            --kj[j];
            --ki[i];
            push(kj, upoly::scale(num, inv * Fraction(S, D.roots[i])));
            push(ki, upoly::scale(num, -(inv * Fraction(S, D.roots[j]))));
            continue;
        }
        // All differences nilpotent: 1/(1-r_i Y) = sum_{k<l} delta^k Y^k / (1-r_j Y)^{k+1}.
        std::size_t i = support[0], j = support[1];
        Fraction delta(S, D.roots[i] - D.roots[j]);
        const u64 l = D.diff_nil[i][j];
        Fraction dk = Fraction::of(S, 1);
        for (u64 k = 0; k < l; ++k) {
            auto nk = key;
            --nk[i];
            nk[j] += static_cast<unsigned>(k + 1);
            push(nk, upoly::shift(upoly::scale(num, dk), k, zero));
            dk = dk * delta;
        }
    }
    std::sort(out.terms.begin(), out.terms.end(), [](const auto& a, const auto& b) {
        return a.root != b.root ? a.root < b.root : a.power < b.power;
    });
    return out;
}

/// First `count` power-series coefficients of a partial fraction sum.
inline std::vector<Fraction> expand_series(const PartialFractions& pf, const RootData& D, std::size_t count) {
    const auto& S = D.S;
    std::vector<Fraction> out(count, Fraction::of(S, 0));
    for (std::size_t n = 0; n < count && n < pf.polynomial.size(); ++n) out[n] = pf.polynomial[n];
    const u64 q = S->ring()->q();
    for (const auto& t : pf.terms) {
        Fraction r(S, D.roots[t.root]);
        std::vector<Fraction> pw{Fraction::of(S, 1)};
        for (std::size_t n = 1; n < count; ++n) pw.push_back(pw.back() * r);
        for (std::size_t sidx = 0; sidx < t.numerator.size(); ++sidx) {
            if (t.numerator[sidx].is_zero()) continue;
            for (std::size_t n = sidx; n < count; ++n) {
                u64 b = binomial_mod(n - sidx + t.power - 1, t.power - 1, q);
                if (b == 0) continue;
                out[n] += t.numerator[sidx] * pw[n - sidx] * Fraction::of(S, static_cast<i64>(b));
            }
        }
    }
    return out;
}

struct ExpPolyTerm {
    std::size_t root;
    RingElem base;
    std::vector<Fraction> coeffs;  // c_k in front of C(n, k)
};

struct ExpPolySum {
    RootData roots;
    u64 start = 0;
    std::vector<ExpPolyTerm> terms;

    const MultiplicativeSet::Ptr& set() const { return roots.S; }

    std::size_t max_binomial_index() const {
        std::size_t u = 0;
        for (const auto& t : terms)
            if (!t.coeffs.empty()) u = std::max(u, t.coeffs.size() - 1);
        return u;
    }

    Fraction value_at(u64 n) const {
        const auto& S = roots.S;
        const u64 q = S->ring()->q();
        Fraction v = Fraction::of(S, 0);
        for (const auto& t : terms) {
            Fraction poly = Fraction::of(S, 0);
            for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
                u64 b = binomial_mod(n, k, q);
                if (b) poly += t.coeffs[k] * Fraction::of(S, static_cast<i64>(b));
            }
            v += Fraction(S, t.base.pow(n)) * poly;
        }
        return v;
    }
};

/**
 * Exponential-polynomial form of alpha given the split of its characteristic
 * polynomial. Terms with nilpotent base only affect finitely many indices and
 * are dropped; the start index accounts for them.
 */
inline ExpPolySum exp_poly_sum(const LRS& alpha, const std::vector<std::pair<RingElem, unsigned>>& roots,
                               const ExpPolyOptions& opts = {}) {
    ExpPolySum eps;
    eps.roots = classify_roots(roots, opts);
    const RootData& D = eps.roots;
    const auto& S = D.S;
    const auto& R = alpha.ring();
    const Fraction zero = Fraction::of(S, 0);

    // phi(Y) = prod (1 - r_i Y)^{m_i} must be the reversed characteristic polynomial.
    UPoly<RingElem> phi{R->one()};
    for (std::size_t i = 0; i < D.roots.size(); ++i)
        for (unsigned k = 0; k < D.multiplicity[i]; ++k)
            phi = upoly::mul(phi, UPoly<RingElem>{R->one(), -D.roots[i]}, R->zero());
    if (!upoly::equal(phi, char_poly(alpha).reversed))
        throw InvalidInput("roots do not split the characteristic polynomial");

    UPoly<Fraction> h;
    for (const auto& c : gf_numerator(alpha)) h.push_back(Fraction(S, c));
    PartialFractions pf = partial_fractions(h, D);

    u64 start = pf.polynomial.empty() ? 0 : upoly::trim(pf.polynomial).size();
    std::map<std::size_t, std::vector<Fraction>> coeffs;
    for (const auto& t : pf.terms) {
        const std::size_t i = t.root;
        const unsigned m = t.power;
        for (std::size_t sidx = 0; sidx < t.numerator.size(); ++sidx) {
            const Fraction& b = t.numerator[sidx];
            if (b.is_zero()) continue;
            if (!D.unit[i]) {
                start = std::max<u64>(start, sidx + D.nil_index[i]);
                continue;
            }
            if (sidx + 1 > m) start = std::max<u64>(start, sidx + 1 - m);
            auto& c = coeffs[i];
            if (c.size() < m) c.resize(m, zero);
            Fraction scaled = b * Fraction::inverse_of_generator(S, D.root_gen[i], static_cast<std::uint32_t>(sidx));
            // C(n - s + m - 1, m - 1) = sum_k C(n, k) C(m - 1 - s, m - 1 - k)
            for (unsigned k = 0; k < m; ++k) {
                Integer bin = binomial(static_cast<i64>(m) - 1 - static_cast<i64>(sidx), m - 1 - k);
                u64 bm = reduce_integer(bin, R->q());
                if (bm) c[k] += scaled * Fraction::of(S, static_cast<i64>(bm));
            }
        }
    }
    for (auto& [i, c] : coeffs) {
        c = upoly::trim(c);
        if (!c.empty()) eps.terms.push_back({i, D.roots[i], c});
    }
    eps.start = start;

    auto seq = terms(alpha, static_cast<std::size_t>(start + opts.check_window + 1));
    for (u64 n = start; n <= start + opts.check_window; ++n)
        if (!(eps.value_at(n) == Fraction(S, seq[n])))
            throw Error("internal", "exponential-polynomial reconstruction failed at n = " + std::to_string(n));
    // The bound above is conservative; walk it back while earlier terms still agree.
    while (eps.start > 0 && eps.value_at(eps.start - 1) == Fraction(S, seq[eps.start - 1])) --eps.start;
    return eps;
}

/// alpha_{P z + q} = sum_i bases_i^z coeffs_i for P z + q >= start.
struct SimpleSum {
    u64 residue = 0;
    u64 period = 1;
    std::vector<Fraction> bases;
    std::vector<Fraction> coeffs;
    u64 start = 0;  // smallest z with P z + residue >= eps.start
};

enum class ResidueSplit {
    Minimal,  // one sum when no polynomial part is present
    Full      // always split into (at least) p^e residues
};

/// Residue-class period P with C(n + P, k) = C(n, k) mod p^e for all k <= u.
inline u64 simple_sum_period(u64 p, unsigned e, std::size_t u, ResidueSplit mode) {
    if (u == 0 && mode == ResidueSplit::Minimal) return 1;
    unsigned extra = 0;
    for (u64 v = u; v >= p; v /= p) ++extra;
    Integer P = ipow(Integer(p), e + extra);
    if (P > Integer(1) << 20) throw ResourceExhausted("residue-class splitting needs too many classes");
    return static_cast<u64>(P);
}

inline std::vector<SimpleSum> to_simple_sums(const ExpPolySum& eps, u64 p, unsigned e,
                                             ResidueSplit mode = ResidueSplit::Minimal) {
    const auto& S = eps.set();
    const u64 q = S->ring()->q();
    const u64 P = simple_sum_period(p, e, eps.max_binomial_index(), mode);
    std::vector<SimpleSum> out;
    std::vector<Fraction> baseP;
    for (const auto& t : eps.terms) baseP.push_back(Fraction(S, t.base.pow(P)));
    for (u64 r = 0; r < P; ++r) {
        SimpleSum s;
        s.residue = r;
        s.period = P;
        s.start = eps.start > r ? (eps.start - r + P - 1) / P : 0;
        for (std::size_t i = 0; i < eps.terms.size(); ++i) {
            const auto& t = eps.terms[i];
            Fraction poly = Fraction::of(S, 0);
            for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
                u64 b = binomial_mod(r, k, q);
                if (b) poly += t.coeffs[k] * Fraction::of(S, static_cast<i64>(b));
            }
            s.bases.push_back(baseP[i]);
            s.coeffs.push_back(Fraction(S, t.base.pow(r)) * poly);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace skolem
