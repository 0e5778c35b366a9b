#pragma once

/**
 * @file zeroset.hpp
 * @brief Subsets of N carried both symbolically (when a p-normal form is known) and as automata.
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "skolem/dfa.hpp"
#include "skolem/pnormal.hpp"

namespace skolem {

/// PROVEN, or CERTIFIED_UP_TO(bound) for the named bounded oracle.
struct Certification {
    bool proven = true;
    Integer bound = 0;
    std::string oracle;

    static Certification proof() { return {}; }
    static Certification up_to(const Integer& bound, std::string oracle) { return {false, bound, std::move(oracle)}; }

    std::string str() const { return proven ? "PROVEN" : "CERTIFIED_UP_TO(" + bound.str() + ")"; }
};

inline Certification weakest(const Certification& a, const Certification& b) {
    if (a.proven) return b;
    if (b.proven) return a;
    return a.bound <= b.bound ? a : b;
}

class AutomaticN {
public:
    AutomaticN() = default;

    static AutomaticN symbolic(u64 base, PNormalN set) {
        AutomaticN x;
        x.base_ = base;
        std::sort(set.finite.begin(), set.finite.end());
        x.symbolic_ = std::move(set);
        return x;
    }

    static AutomaticN automaton(DigitDFA dfa) {
        AutomaticN x;
        x.base_ = dfa.base();
        x.dfa_ = std::make_shared<DigitDFA>(std::move(dfa));
        return x;
    }

    static AutomaticN finite(u64 base, std::vector<Integer> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        PNormalN s;
        s.threshold = members.empty() ? Integer(0) : Integer(members.back() + 1);
        s.finite = std::move(members);
        s.tail.p = base;
        return symbolic(base, std::move(s));
    }

    u64 base() const { return base_; }
    const std::optional<PNormalN>& normal_form() const { return symbolic_; }

    /// Exact automaton of the whole set.
    const DigitDFA& dfa() const {
        if (!dfa_) {
            const auto& s = *symbolic_;
            DigitDFA tail = dfa_none(base_);
            for (const auto& part : s.tail.parts) {
                DigitDFA d = std::holds_alternative<ProgressionZ>(part)
                                 ? dfa_progression(base_, std::get<ProgressionZ>(part).a, std::get<ProgressionZ>(part).b)
                                 : part_dfa(std::get<ElementaryPNested>(part));
                tail = dfa_product(tail, d, SetOp::Or);
            }
            tail = dfa_product(tail, dfa_at_least(base_, s.threshold));
            dfa_ = std::make_shared<DigitDFA>(dfa_product(tail, dfa_finite(base_, s.finite), SetOp::Or));
        }
        return *dfa_;
    }

    bool contains(const Integer& z) const {
        if (z < 0) return false;
        if (symbolic_) return symbolic_->contains(z);
        return dfa_->accepts(z);
    }

    /// Smallest member >= from.
    std::optional<Integer> next_member(const Integer& from) const {
        Integer lo = from < 0 ? Integer(0) : from;
        if (!symbolic_) return bounded_next(*dfa_, lo);
        const auto& s = *symbolic_;
        std::optional<Integer> best;
        auto offer = [&](const Integer& z) {
            if (!best || z < *best) best = z;
        };
        for (const auto& z : s.finite)
            if (z >= lo && z < s.threshold) {
                offer(z);
                break;
            }
        Integer t = std::max(lo, s.threshold);
        for (const auto& part : s.tail.parts) {
            if (const auto* P = std::get_if<ProgressionZ>(&part)) {
                offer(t + floor_mod(P->b - t, P->a));
            } else if (auto z = bounded_next(part_dfa(std::get<ElementaryPNested>(part)), t)) {
                offer(*z);
            }
        }
        return best;
    }

    bool is_empty() const { return !next_member(0); }

    std::vector<Integer> enumerate_up_to(const Integer& bound) const {
        std::vector<Integer> out;
        Integer z = 0;
        while (auto m = next_member(z)) {
            if (*m > bound) break;
            out.push_back(*m);
            z = *m + 1;
        }
        return out;
    }

    /// True when the set is finite (decided on the automaton).
    bool is_finite() const {
        if (symbolic_ && symbolic_->tail.parts.empty()) return true;
        return dfa().is_finite();
    }

    std::string str() const {
        if (symbolic_) return symbolic_->str();
        return "<automaton base " + std::to_string(base_) + ", " + std::to_string(dfa_->size()) + " states>";
    }

    static const DigitDFA& part_dfa(const ElementaryPNested& D) { return D.dfa(); }

private:
    static std::optional<Integer> bounded_next(const DigitDFA& A, const Integer& lo) {
        auto rest = dfa_product(A, dfa_at_least(A.base(), lo));
        if (rest.is_empty()) return std::nullopt;
        return A.next_member(lo, DigitDFA::digits(lo, A.base()).size() + rest.size() + 1);
    }

    u64 base_ = 2;
    std::optional<PNormalN> symbolic_;
    mutable std::shared_ptr<DigitDFA> dfa_;
};

struct FitOptions {
    u64 p = 2;
    u64 max_step = 16;             // largest l tried for nested parts
    std::size_t max_exceptions = 4;  // leading members allowed in the finite part
    std::size_t pair_window = 8;     // members considered when fitting two nested terms
};

namespace detail {

inline std::vector<Integer> tail_members(const std::vector<PNormalPart>& parts, const Integer& lo, const Integer& hi,
                                         std::size_t cap) {
    std::set<Integer> out;
    for (const auto& part : parts) {
        if (const auto* P = std::get_if<ProgressionZ>(&part)) {
            for (Integer z = lo + floor_mod(P->b - lo, P->a); z <= hi; z += P->a) {
                out.insert(z);
                if (out.size() > cap) return {};
            }
            continue;
        }
        const auto& D = std::get<ElementaryPNested>(part);
        Integer step = ipow(Integer(D.p()), static_cast<unsigned>(D.step()));
        u64 kmax = 1;
        for (Integer x = step; x <= hi * D.denominator() + 1; x *= step) ++kmax;
        for (const auto& z : D.members_with_exponents_up_to(kmax))
            if (z >= lo && z <= hi) out.insert(z);
        if (out.size() > cap) return {};
    }
    return {out.begin(), out.end()};
}

inline bool tail_matches(const std::vector<PNormalPart>& parts, const std::vector<Integer>& T, const Integer& hi) {
    return tail_members(parts, T.front(), hi, T.size()) == T;
}

/// Structured fits of T (all members in [T[0], hi]) with the tail starting at T[0].
inline std::optional<std::vector<PNormalPart>> fit_tail(const std::vector<Integer>& T, const Integer& hi,
                                                        const FitOptions& opt) {
    const Integer& t = T.front();
    // Periodic: a period d is the distance from T[0] to some later member.
    {
        std::vector<bool> ind(static_cast<std::size_t>(hi - t) + 1, false);
        for (const auto& z : T) ind[static_cast<std::size_t>(z - t)] = true;
        for (std::size_t j = 1; j < T.size(); ++j) {
            Integer d = T[j] - t;
            if (3 * d > hi - t + 1) break;
            auto dd = static_cast<std::size_t>(d);
            bool periodic = true;
            for (std::size_t i = 0; i + dd < ind.size() && periodic; ++i) periodic = ind[i] == ind[i + dd];
            if (!periodic) continue;
            std::vector<PNormalPart> parts;
            for (std::size_t r = 0; r < dd; ++r)
                if (ind[r]) parts.push_back(ProgressionZ::make(d, t + r));
            return parts;
        }
    }
    auto nested_fit = [&](u64 l, const std::vector<Rational>& a) -> std::optional<std::vector<PNormalPart>> {
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] <= 0) return std::nullopt;
        try {
            std::vector<PNormalPart> parts{ElementaryPNested::make(opt.p, l, a)};
            if (tail_matches(parts, T, hi)) return parts;
        } catch (const InvalidInput&) {
        }
        return std::nullopt;
    };
    Integer D = 1;
    for (u64 l = 1; l <= opt.max_step; ++l) {
        D *= opt.p;
        if (D > 2 * (hi + 1)) break;
        Rational a1(T[1] - t, D - 1);
        if (auto f = nested_fit(l, {Rational(t) - a1, a1})) return f;
    }
    D = 1;
    std::size_t w = std::min(T.size(), opt.pair_window + 1);
    for (u64 l = 1; l <= opt.max_step; ++l) {
        D *= opt.p;
        if (D > 2 * (hi + 1)) break;
        for (std::size_t i = 1; i < w; ++i)
            for (std::size_t j = i + 1; j < w; ++j) {
                Rational a1(T[i] - t, D - 1), a2(T[j] - t, D - 1);
                if (auto f = nested_fit(l, {Rational(t) - a1 - a2, a1, a2})) return f;
            }
    }
    return std::nullopt;
}

} // namespace detail

/// A p-normal description reproducing exactly the sorted members Z of a set on [0, hi], if one is found.
inline std::optional<PNormalN> fit_pnormal(const std::vector<Integer>& Z, const Integer& hi, const FitOptions& opt) {
    PNormalN out;
    out.tail.p = opt.p;
    if (Z.empty()) return out;
    for (std::size_t c = 0; c <= std::min(opt.max_exceptions, Z.size()); ++c) {
        std::vector<Integer> T(Z.begin() + static_cast<std::ptrdiff_t>(c), Z.end());
        if (T.size() < 3) break;
        if (auto parts = detail::fit_tail(T, hi, opt)) {
            out.threshold = T.front();
            out.finite.assign(Z.begin(), Z.begin() + static_cast<std::ptrdiff_t>(c));
            out.tail.parts = std::move(*parts);
            return out;
        }
    }
    return std::nullopt;
}

/// A symbolic form of an automaton's set, confirmed by equality of minimal automata.
inline std::optional<PNormalN> fit_automaton(const DigitDFA& A, u64 p, const Integer& sample_bound = 65536) {
    auto canon = A.minimized();
    if (canon.is_finite()) {
        Integer cap = ipow(Integer(A.base()), static_cast<unsigned>(canon.size() + 1));
        auto members = canon.enumerate_up_to(cap);
        return AutomaticN::finite(A.base(), members).normal_form();
    }
    auto members = canon.enumerate_up_to(sample_bound);
    FitOptions opt;
    opt.p = p;
    auto fit = fit_pnormal(members, sample_bound, opt);
    if (!fit) return std::nullopt;
    if (AutomaticN::symbolic(A.base(), *fit).dfa() != canon) return std::nullopt;
    return fit;
}

namespace detail {

inline std::optional<ProgressionZ> crt(const ProgressionZ& x, const ProgressionZ& y) {
    Integer g = boost::multiprecision::gcd(x.a, y.a);
    if (floor_mod(x.b - y.b, g) != 0) return std::nullopt;
    Integer l = lcm_int(x.a, y.a);
    for (Integer z = x.b; z < l; z += x.a)
        if (floor_mod(z - y.b, y.a) == 0) return ProgressionZ::make(l, z);
    return std::nullopt;
}

/// Intersection of two tail parts as parts, or nullopt when only an automaton is available.
inline std::optional<std::vector<PNormalPart>> intersect_parts(const PNormalPart& u, const PNormalPart& v, u64 p) {
    const auto* pu = std::get_if<ProgressionZ>(&u);
    const auto* pv = std::get_if<ProgressionZ>(&v);
    if (pu && pv) {
        if (auto c = crt(*pu, *pv)) return std::vector<PNormalPart>{*c};
        return std::vector<PNormalPart>{};
    }
    if (pu || pv) {
        const auto& D = std::get<ElementaryPNested>(pu ? v : u);
        auto r = intersect_nested_progression(D, pu ? *pu : *pv);
        if (!r) return std::nullopt;
        return std::vector<PNormalPart>(r->begin(), r->end());
    }
    const auto& D = std::get<ElementaryPNested>(u);
    const auto& E = std::get<ElementaryPNested>(v);
    if (D == E) return std::vector<PNormalPart>{D};
    auto prod = dfa_product(D.dfa(), E.dfa());
    if (prod.is_empty()) return std::vector<PNormalPart>{};
    // Parts must describe the intersection on all of N; a fitted finite part becomes singletons.
    auto fit = fit_automaton(prod, p);
    if (!fit) return std::nullopt;
    std::vector<PNormalPart> out;
    if (fit->threshold > 0) {
        auto below = AutomaticN::symbolic(p, *fit).enumerate_up_to(fit->threshold - 1);
        for (const auto& z : below) out.push_back(ElementaryPNested::make(p, 1, {Rational(z)}));
        // Tail parts may also hold members below the threshold that the set lacks.
        for (const auto& z : detail::tail_members(fit->tail.parts, 0, fit->threshold - 1, 1u << 20))
            if (!std::binary_search(below.begin(), below.end(), z)) return std::nullopt;
    }
    out.insert(out.end(), fit->tail.parts.begin(), fit->tail.parts.end());
    return out;
}

} // namespace detail

/// X intersected with Y over a common base. Exact.
inline AutomaticN intersect_same_p(const AutomaticN& X, const AutomaticN& Y) {
    if (X.base() != Y.base()) throw InvalidInput("same-base intersection over different bases");
    const u64 p = X.base();
    if (X.normal_form() && Y.normal_form()) {
        const auto& x = *X.normal_form();
        const auto& y = *Y.normal_form();
        Integer t = std::max(x.threshold, y.threshold);
        std::vector<PNormalPart> parts;
        bool ok = true;
        for (const auto& u : x.tail.parts) {
            for (const auto& v : y.tail.parts) {
                auto r = detail::intersect_parts(u, v, p);
                if (!r) {
                    ok = false;
                    break;
                }
                for (auto& q : *r)
                    if (std::find(parts.begin(), parts.end(), q) == parts.end()) parts.push_back(std::move(q));
            }
            if (!ok) break;
        }
        if (ok) {
            PNormalN s;
            s.threshold = t;
            s.tail.p = p;
            s.tail.parts = std::move(parts);
            if (t > 0)
                for (const auto& z : X.enumerate_up_to(t - 1))
                    if (Y.contains(z)) s.finite.push_back(z);
            return AutomaticN::symbolic(p, std::move(s));
        }
    }
    auto prod = dfa_product(X.dfa(), Y.dfa());
    if (auto fit = fit_automaton(prod, p)) return AutomaticN::symbolic(p, *fit);
    return AutomaticN::automaton(std::move(prod));
}

} // namespace skolem
