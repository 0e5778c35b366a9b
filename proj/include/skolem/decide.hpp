#pragma once

/**
 * @file decide.hpp
 * @brief End-to-end zero-set computation and verdict for a problem.
 *
 * Per prime-power part: split the characteristic polynomial, decompose <0>
 * into primary components, write each projection as an exponential
 * polynomial, cut it into simple sums on residue classes, solve each with a
 * backend, and reassemble. The per-prime sets are then intersected.
 */

#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "skolem/crossprime.hpp"
#include "skolem/exppoly.hpp"
#include "skolem/problem.hpp"
#include "skolem/reduction.hpp"
#include "skolem/sunit.hpp"

namespace skolem {

struct DecideOptions {
    Backend backend = Backend::Auto;
    u64 exponent_bound = 128;
    u64 certify_bound = 4096;
    u64 enumeration_bound = 1000000;
    SplitStrategy split = SplitStrategy::BaseRootsFirst;
    ResidueSplit residues = ResidueSplit::Minimal;
    GroebnerOptions groebner;
    bool parallel = true;
};

/// Problem options first, then explicit overrides.
inline DecideOptions options_for(const Problem& P, DecideOptions base = {}) {
    if (P.options.bound) base.exponent_bound = *P.options.bound;
    if (P.options.certify_bound) base.certify_bound = *P.options.certify_bound;
    if (P.options.backend) base.backend = *P.options.backend;
    return base;
}

enum class Outcome { HasZero, NoZero, UnknownBounded };

inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::HasZero: return "HAS_ZERO";
        case Outcome::NoZero: return "NO_ZERO";
        default: return "UNKNOWN_BOUNDED";
    }
}

struct Reason {
    std::string code;
    std::string message;
};

struct ResidueReport {
    u64 residue = 0;
    u64 period = 1;
    u64 start = 0;
    std::string equation;
    std::string method;
    Certification cert;
};

struct PrimaryReport {
    std::vector<std::string> ideal;
    bool primary_verified = false;
    std::string note;
    u64 start = 0;
    std::vector<ResidueReport> sums;
};

struct ComponentReport {
    u64 prime = 2;
    unsigned exponent = 1;
    std::string ring;
    std::vector<std::string> adjoined;
    std::vector<PrimaryReport> primaries;
    AutomaticN set;
    Certification cert;
    std::optional<Reason> failure;
};

struct ZeroSetReport {
    Outcome verdict = Outcome::UnknownBounded;
    std::optional<Integer> witness;
    bool witness_verified = false;
    Certification cert;
    std::vector<ComponentReport> components;
    MixedUnion zero_set;
    std::vector<std::string> assumptions;
    std::vector<Reason> reasons;
    double seconds = 0;
    std::size_t simple_sums = 0;
};

namespace detail {

/// {P z + r : z in Z, z >= zmin} as a set of n, with P a power of p.
inline PNormalN affine_image(const PNormalN& Z, u64 P, u64 r, u64 zmin, u64 p) {
    PNormalN out;
    out.tail.p = p;
    const Integer zt = std::max(Z.threshold, Integer(zmin));
    if (zt > 0)
        for (const auto& z : AutomaticN::symbolic(p, Z).enumerate_up_to(zt - 1))
            if (z >= zmin) out.finite.push_back(z * P + r);
    out.threshold = zt * P + r;
    for (const auto& part : Z.tail.parts) {
        if (const auto* g = std::get_if<ProgressionZ>(&part)) {
            out.tail.parts.push_back(ProgressionZ::make(g->a * P, g->b * P + r));
        } else {
            const auto& D = std::get<ElementaryPNested>(part);
            std::vector<Rational> a;
            for (std::size_t i = 0; i <= D.arity(); ++i) a.push_back(D.coefficient(i) * P + (i == 0 ? r : 0));
            out.tail.parts.push_back(ElementaryPNested::make(D.p(), D.step(), a));
        }
    }
    return out;
}

/// Union of sets over N in one base.
inline PNormalN union_n(const std::vector<PNormalN>& sets, u64 p) {
    PNormalN out;
    out.tail.p = p;
    for (const auto& s : sets) out.threshold = std::max(out.threshold, s.threshold);
    for (const auto& s : sets) {
        if (out.threshold > 0)
            for (const auto& z : AutomaticN::symbolic(p, s).enumerate_up_to(out.threshold - 1))
                out.finite.push_back(z);
        for (const auto& part : s.tail.parts)
            if (std::find(out.tail.parts.begin(), out.tail.parts.end(), part) == out.tail.parts.end())
                out.tail.parts.push_back(part);
    }
    std::sort(out.finite.begin(), out.finite.end());
    out.finite.erase(std::unique(out.finite.begin(), out.finite.end()), out.finite.end());
    return out;
}

/// Replaces membership below N by the actual terms of the recurrence.
inline PNormalN patch_prefix(PNormalN S, const LRS& L, u64 N) {
    if (N == 0) return S;
    const Integer T = std::max(S.threshold, Integer(N));
    auto seq = terms(L, static_cast<std::size_t>(N));
    std::vector<Integer> fin;
    for (u64 n = 0; n < N; ++n)
        if (seq[n].is_zero()) fin.push_back(n);
    auto X = AutomaticN::symbolic(S.tail.p, S);
    for (const auto& z : X.enumerate_up_to(T - 1))
        if (z >= N) fin.push_back(z);
    S.threshold = T;
    S.finite = std::move(fin);
    return S;
}

inline AutomaticN brute_set(const LRS& L, u64 B, u64 p) {
    std::vector<Integer> zs;
    for (u64 n : brute_zero_set(L, B)) zs.push_back(n);
    return AutomaticN::finite(p, std::move(zs));
}

} // namespace detail

namespace detail {

inline ZeroSetCertificate solve_sum(const SimpleSumEquation& eq, bool finite_ring, const DecideOptions& opts) {
    Backend b = opts.backend;
    if (b == Backend::Auto) b = finite_ring ? Backend::Finite : Backend::Certify;
    if (b == Backend::Finite) {
        if (!finite_ring) throw InvalidInput("the finite backend needs a finite ring");
        return zero_set_finite_ring(eq);
    }
    CertifyOptions co;
    co.bound = opts.certify_bound;
    return zero_set_guess_certify(eq, co);
}

/// Zero set of one primary projection, over N.
inline std::pair<PNormalN, Certification> primary_zero_set(const LRS& L, const std::vector<std::pair<RingElem, unsigned>>& roots,
                                                           u64 p, unsigned e, const DecideOptions& opts,
                                                           PrimaryReport& rep, std::size_t& counter) {
    ExpPolyOptions eo;
    eo.groebner = opts.groebner;
    auto eps = exp_poly_sum(L, roots, eo);
    rep.start = eps.start;
    std::vector<PNormalN> parts;
    Certification cert;
    for (const auto& s : to_simple_sums(eps, p, e, opts.residues)) {
        auto eq = clear_denominators(s, p, e);
        auto z = solve_sum(eq, L.ring()->is_finite(), opts);
        ++counter;
        rep.sums.push_back({s.residue, s.period, s.start, eq.str(), z.method, z.cert});
        cert = weakest(cert, z.cert);
        parts.push_back(affine_image(z.set, s.period, s.residue, s.start, p));
    }
    return {patch_prefix(union_n(parts, p), L, eps.start), cert};
}

} // namespace detail

/// Zero set of the recurrence restricted to one prime-power part of the characteristic.
inline ComponentReport component_zero_set(const CrtComponent& C, const std::optional<UserDecomposition>& user,
                                          const DecideOptions& opts, std::size_t& counter) {
    ComponentReport rep;
    rep.prime = C.prime;
    rep.exponent = C.exponent;
    rep.ring = C.ring->describe();
    auto split = split_char_poly(C.ring, char_poly(C.lrs).poly, opts.split);
    rep.adjoined = split.adjoined;
    auto ext = C.lrs.map_to(split.extended_ring);
    auto primaries = primary_split(split.extended_ring, user, opts.groebner);
    std::optional<AutomaticN> acc;
    for (const auto& comp : primaries) {
        PrimaryReport pr;
        for (const auto& g : comp.ideal) pr.ideal.push_back(to_string(g, comp.ring->variables()));
        pr.primary_verified = comp.primary_verified;
        pr.note = comp.note;
        std::vector<std::pair<RingElem, unsigned>> roots;
        for (const auto& [r, m] : split.roots) roots.emplace_back(comp.ring->elem(r.poly().with_modulus(comp.ring->q())), m);
        auto [set, cert] = detail::primary_zero_set(ext.map_to(comp.ring), roots, C.prime, C.exponent, opts, pr, counter);
        rep.cert = weakest(rep.cert, cert);
        auto X = AutomaticN::symbolic(C.prime, std::move(set));
        acc = acc ? intersect_same_p(*acc, X) : std::move(X);
        rep.primaries.push_back(std::move(pr));
    }
    // The zero ring has no primary components and every term vanishes.
    rep.set = acc ? std::move(*acc) : AutomaticN::symbolic(C.prime, detail::everything(C.prime));
    return rep;
}

/// Zero-set report for a validated problem.
inline ZeroSetReport decide_skolem(const Problem& P, const DecideOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    ZeroSetReport rep;
    auto comps = components(P, opts.groebner);

    auto run = [&](std::size_t i, std::size_t& counter) {
        const auto& C = comps[i];
        try {
            return component_zero_set(C, decomposition_for(P, C.prime), opts, counter);
        } catch (const InvalidInput&) {
            throw;
        } catch (const Error& e) {
            ComponentReport r;
            r.prime = C.prime;
            r.exponent = C.exponent;
            r.ring = C.ring->describe();
            r.failure = Reason{e.code(), e.what()};
            r.set = detail::brute_set(C.lrs, opts.certify_bound, C.prime);
            r.cert = Certification::up_to(opts.certify_bound, "brute");
            return r;
        }
    };
    std::vector<std::size_t> counters(comps.size(), 0);
    if (opts.parallel && comps.size() > 1) {
        std::vector<std::future<ComponentReport>> jobs;
        for (std::size_t i = 0; i < comps.size(); ++i)
            jobs.push_back(std::async(std::launch::async, run, i, std::ref(counters[i])));
        for (auto& j : jobs) rep.components.push_back(j.get());
    } else {
        for (std::size_t i = 0; i < comps.size(); ++i) rep.components.push_back(run(i, counters[i]));
    }
    for (auto c : counters) rep.simple_sums += c;

    for (const auto& c : rep.components) {
        if (c.failure) rep.reasons.push_back(*c.failure);
        for (const auto& pr : c.primaries)
            if (!pr.primary_verified)
                rep.assumptions.push_back("p = " + std::to_string(c.prime) + ": component <" +
                                          detail::join(pr.ideal) + "> assumed primary (" + pr.note + ")");
    }

    std::vector<MixedComponent> sets;
    for (const auto& c : rep.components) sets.push_back({c.set, c.cert});
    CrossOptions co;
    co.exponent_bound = opts.exponent_bound;
    co.enumeration_bound = opts.enumeration_bound;
    try {
        rep.zero_set = intersect_multi(sets, co);
    } catch (const Error& e) {
        rep.reasons.push_back({e.code(), e.what()});
        std::vector<Integer> zs;
        for (u64 n : brute_zero_set(comps, opts.certify_bound)) zs.push_back(n);
        rep.zero_set = {{{AutomaticN::finite(comps.front().prime, std::move(zs)),
                          Certification::up_to(opts.certify_bound, "brute")}}};
    }
    rep.cert = rep.zero_set.cert();
    for (const auto& c : sets) rep.cert = weakest(rep.cert, c.cert);

    // Smallest member, re-verified on every component.
    std::optional<Integer> from = Integer(0);
    for (int tries = 0; tries < 16 && from; ++tries) {
        auto z = rep.zero_set.next_member(*from);
        if (!z) break;
        bool ok = true;
        for (const auto& C : comps) ok = ok && term_at(C.lrs, *z).is_zero();
        if (ok) {
            rep.witness = z;
            rep.witness_verified = true;
            break;
        }
        rep.reasons.push_back({"witness_rejected", "candidate " + z->str() + " is not a zero"});
        from = *z + 1;
    }
    if (rep.witness) rep.verdict = Outcome::HasZero;
    else if (rep.cert.proven && rep.reasons.empty()) rep.verdict = Outcome::NoZero;
    else {
        rep.verdict = Outcome::UnknownBounded;
        if (rep.reasons.empty())
            rep.reasons.push_back({"bounded_certificate", "no zero found; the zero set is certified only up to " +
                                                              rep.cert.bound.str() + " by " + rep.cert.oracle});
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline ZeroSetReport decide_skolem(const Problem& P) { return decide_skolem(P, options_for(P)); }

} // namespace skolem
