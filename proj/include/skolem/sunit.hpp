#pragma once

/**
 * @file sunit.hpp
 * @brief Zero sets of simple exponential sums sum_i c_i r_i^z with invertible r_i.
 *
 * Two backends: exact cycle detection when the ring is finite, and
 * enumerate-fit-verify up to a bound otherwise. Also the brute-force
 * zero oracle for recurrences.
 */

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skolem/exppoly.hpp"
#include "skolem/lrs.hpp"
#include "skolem/reduction.hpp"
#include "skolem/zeroset.hpp"

namespace skolem {

/// sum_i coeffs_i * bases_i^z = 0 in the ring, after clearing denominators of the localized form.
struct SimpleSumEquation {
    QuotientRing::Ptr ring;
    std::vector<RingElem> coeffs;
    std::vector<RingElem> bases;
    u64 p = 2;
    unsigned e = 1;
    std::vector<Fraction> coeff_fractions;
    std::vector<Fraction> base_fractions;

    RingElem value_at(const Integer& z) const {
        RingElem v = ring->zero();
        for (std::size_t i = 0; i < bases.size(); ++i) v += coeffs[i] * pow_big(bases[i], z);
        return v;
    }

    static RingElem pow_big(RingElem b, Integer z) {
        RingElem r = b.ring()->one();
        while (z > 0) {
            if ((z & 1) != 0) r *= b;
            z >>= 1;
            if (z > 0) b *= b;
        }
        return r;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < bases.size(); ++i)
            s += (i ? " + " : "") + std::string("(") + coeff_fractions[i].str() + ")*(" + base_fractions[i].str() +
                 ")^z";
        return (s.empty() ? "0" : s) + " = 0";
    }
};

/// Merges equal bases, drops zero coefficients, and multiplies through by the denominators:
/// with r_i = u_i / d_i and c_i = n_i / e_i, the equation becomes
/// sum_i (n_i E / e_i) (u_i prod_{k != i} d_k)^z = 0 where E is the common coefficient denominator.
/// All multipliers are non-zero-divisors, so the zero set is unchanged.
inline SimpleSumEquation clear_denominators(const SimpleSum& s, u64 p, unsigned e) {
    SimpleSumEquation eq;
    eq.p = p;
    eq.e = e;
    std::vector<Fraction> bs, cs;
    for (std::size_t i = 0; i < s.bases.size(); ++i) {
        std::size_t j = 0;
        while (j < bs.size() && !(bs[j] == s.bases[i])) ++j;
        if (j == bs.size()) {
            bs.push_back(s.bases[i]);
            cs.push_back(s.coeffs[i]);
        } else {
            cs[j] += s.coeffs[i];
        }
    }
    if (s.bases.empty()) {
        return eq;
    }
    const auto& S = s.bases.front().set();
    eq.ring = S->ring();
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (cs[i].is_zero()) continue;
        eq.base_fractions.push_back(bs[i]);
        eq.coeff_fractions.push_back(cs[i]);
    }
    const std::size_t g = S->size();
    std::vector<std::uint32_t> E(g, 0);
    for (const auto& c : eq.coeff_fractions)
        for (std::size_t k = 0; k < g; ++k) E[k] = std::max(E[k], c.denominator_exponents()[k]);
    for (std::size_t i = 0; i < eq.base_fractions.size(); ++i) {
        const auto& c = eq.coeff_fractions[i];
        std::vector<std::uint32_t> lift(g);
        for (std::size_t k = 0; k < g; ++k) lift[k] = E[k] - c.denominator_exponents()[k];
        eq.coeffs.push_back(c.numerator() * S->product(lift));
        RingElem b = eq.base_fractions[i].numerator();
        for (std::size_t k = 0; k < eq.base_fractions.size(); ++k)
            if (k != i) b *= eq.base_fractions[k].denominator();
        eq.bases.push_back(b);
    }
    return eq;
}

/// A zero set in the exponent z, over N.
struct ZeroSetCertificate {
    PNormalN set;
    Certification cert;
    std::string method;          // "identically-zero", "single-term", "cycle", "fit", "finite-list"
    u64 period = 0;              // exact period for the cycle backend
    std::vector<Integer> observed;  // zeros enumerated by the bounded backend
};

namespace detail {

inline PNormalN everything(u64 p) {
    PNormalN s;
    s.tail.p = p;
    s.tail.parts.push_back(ProgressionZ::make(1, 0));
    return s;
}

inline PNormalN nothing(u64 p) {
    PNormalN s;
    s.tail.p = p;
    return s;
}

} // namespace detail

/// Complete backend for finite rings: the tuple (r_i^z) is eventually periodic with computable period.
inline ZeroSetCertificate zero_set_finite_ring(const SimpleSumEquation& eq, u64 max_period = u64(1) << 24) {
    ZeroSetCertificate out;
    out.cert = Certification::proof();
    if (eq.bases.empty()) {
        out.set = detail::everything(eq.p);
        out.method = "identically-zero";
        return out;
    }
    if (!eq.ring->is_finite()) throw InvalidInput("cycle backend needs a finite ring");
    u64 mu = 0;
    Integer T = 1;
    for (const auto& b : eq.bases) {
        auto c = power_cycle(b);
        mu = std::max(mu, c.preperiod);
        T = lcm_int(T, Integer(c.period));
        if (T > max_period) throw ResourceExhausted("exponential sum period too long");
    }
    const u64 period = static_cast<u64>(T);
    std::vector<RingElem> pw(eq.bases.size(), eq.ring->one());
    std::vector<bool> zero(mu + period);
    for (u64 z = 0; z < mu + period; ++z) {
        RingElem v = eq.ring->zero();
        for (std::size_t i = 0; i < pw.size(); ++i) {
            v += eq.coeffs[i] * pw[i];
            pw[i] *= eq.bases[i];
        }
        zero[z] = v.is_zero();
    }
    // Minimal period of the zero pattern on the cycle.
    u64 d = period;
    for (const auto& [f, k] : factorize(period)) {
        (void)k;
        while (d % f == 0) {
            u64 c = d / f;
            bool ok = true;
            for (u64 z = mu; z + c < mu + period && ok; ++z) ok = zero[z] == zero[z + c];
            if (!ok) break;
            d = c;
        }
    }
    out.set.tail.p = eq.p;
    out.set.threshold = mu;
    for (u64 z = 0; z < mu; ++z)
        if (zero[z]) out.set.finite.push_back(z);
    for (u64 r = 0; r < d; ++r)
        if (zero[mu + r]) out.set.tail.parts.push_back(ProgressionZ::make(d, mu + r));
    out.period = d;
    out.method = "cycle";
    return out;
}

struct CertifyOptions {
    u64 bound = 4096;
    std::size_t spot_checks = 4;  // predicted non-members re-evaluated beyond the bound
    u64 seed = 1;
};

/// Bounded backend: zeros on [0, B], a fitted p-normal description, and spot checks in (B, pB].
inline ZeroSetCertificate zero_set_guess_certify(const SimpleSumEquation& eq, const CertifyOptions& opts = {}) {
    ZeroSetCertificate out;
    const Integer B = opts.bound;
    if (eq.bases.empty()) {
        out.set = detail::everything(eq.p);
        out.cert = Certification::proof();
        out.method = "identically-zero";
        return out;
    }
    if (eq.bases.size() == 1) {
        // c r^z with r a non-zero-divisor and c != 0 never vanishes.
        out.set = detail::nothing(eq.p);
        out.cert = Certification::proof();
        out.method = "single-term";
        return out;
    }
    out.cert = Certification::up_to(B, "certify");
    std::vector<RingElem> pw(eq.bases.size(), eq.ring->one());
    for (u64 z = 0; z <= opts.bound; ++z) {
        RingElem v = eq.ring->zero();
        for (std::size_t i = 0; i < pw.size(); ++i) {
            v += eq.coeffs[i] * pw[i];
            if (z < opts.bound) pw[i] *= eq.bases[i];
        }
        if (v.is_zero()) out.observed.push_back(z);
    }
    FitOptions fo;
    fo.p = eq.p;
    fo.max_step = eq.e * digit_length(B, eq.p);
    auto fit = fit_pnormal(out.observed, B, fo);
    bool verified = fit.has_value();
    if (fit) {
        auto candidate = AutomaticN::symbolic(eq.p, *fit);
        const Integer hi = B * eq.p;
        for (const auto& z : candidate.enumerate_up_to(hi))
            if (z > B && !eq.value_at(z).is_zero()) verified = false;
        std::mt19937_64 rng(opts.seed);
        std::size_t checked = 0;
        for (int tries = 0; verified && checked < opts.spot_checks && tries < 64; ++tries) {
            Integer z = B + 1 + Integer(rng() % static_cast<u64>(hi - B));
            if (candidate.contains(z)) continue;
            ++checked;
            if (eq.value_at(z).is_zero()) verified = false;
        }
    }
    if (verified) {
        out.set = std::move(*fit);
        out.method = "fit";
    } else {
        out.set.tail.p = eq.p;
        out.set.threshold = B + 1;
        out.set.finite = out.observed;
        out.method = "finite-list";
    }
    return out;
}

/// Zeros n <= B of the recurrence, by direct iteration.
inline std::vector<u64> brute_zero_set(const LRS& L, u64 B) {
    std::vector<u64> out;
    auto seq = terms(L, static_cast<std::size_t>(B) + 1);
    for (u64 n = 0; n <= B; ++n)
        if (seq[n].is_zero()) out.push_back(n);
    return out;
}

/// Zeros n <= B of a recurrence over a composite characteristic: zero in every CRT component.
inline std::vector<u64> brute_zero_set(const std::vector<CrtComponent>& comps, u64 B) {
    std::vector<bool> zero(B + 1, true);
    for (const auto& c : comps) {
        auto seq = terms(c.lrs, static_cast<std::size_t>(B) + 1);
        for (u64 n = 0; n <= B; ++n) zero[n] = zero[n] && seq[n].is_zero();
    }
    std::vector<u64> out;
    for (u64 n = 0; n <= B; ++n)
        if (zero[n]) out.push_back(n);
    return out;
}

} // namespace skolem
