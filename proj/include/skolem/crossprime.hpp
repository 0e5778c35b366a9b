#pragma once

/**
 * @file crossprime.hpp
 * @brief Intersections of normal sets over multiplicatively independent bases.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "skolem/pnormal.hpp"
#include "skolem/zeroset.hpp"

namespace skolem {

/// sum_i p^(n_i) a_i + sum_j q^(m_j) b_j = d.
struct TwoPowerEquation {
    u64 p = 2, q = 3;
    std::vector<Rational> a, b;
    Rational d;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += (s.empty() ? "" : " + ") + rational_str(a[i]) + "*" + std::to_string(p) + "^n" + std::to_string(i + 1);
        for (std::size_t j = 0; j < b.size(); ++j)
            s += (s.empty() ? "" : " + ") + rational_str(b[j]) + "*" + std::to_string(q) + "^m" + std::to_string(j + 1);
        return (s.empty() ? "0" : s) + " = " + rational_str(d);
    }
};

struct TwoPowerSolution {
    std::vector<u64> n, m;
    bool operator<(const TwoPowerSolution& o) const { return std::tie(n, m) < std::tie(o.n, o.m); }
    bool operator==(const TwoPowerSolution&) const = default;
};

struct TwoPowerResult {
    std::vector<TwoPowerSolution> solutions;  // sorted
    Certification cert;
    u64 exponent_bound = 0;  // exponents searched
};

namespace detail {

struct IntegerEquation {
    std::vector<Integer> a, b;
    Integer d;
};

inline IntegerEquation clear(const TwoPowerEquation& eq) {
    Integer M = boost::multiprecision::denominator(eq.d);
    for (const auto& x : eq.a) M = lcm_int(M, boost::multiprecision::denominator(x));
    for (const auto& x : eq.b) M = lcm_int(M, boost::multiprecision::denominator(x));
    auto lift = [&](const Rational& x) {
        return boost::multiprecision::numerator(x) * (M / boost::multiprecision::denominator(x));
    };
    IntegerEquation out;
    for (const auto& x : eq.a) out.a.push_back(lift(x));
    for (const auto& x : eq.b) out.b.push_back(lift(x));
    out.d = lift(eq.d);
    return out;
}

/// Every nonzero term has the sign of d (or d = 0 and all terms share a sign): each term is at most |d|.
inline bool sign_uniform(const IntegerEquation& e) {
    int sign = e.d > 0 ? 1 : e.d < 0 ? -1 : 0;
    for (const auto* v : {&e.a, &e.b})
        for (const auto& x : *v) {
            if (x == 0) continue;
            int s = x > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            else if (s != sign) return false;
        }
    return true;
}

inline void tuples(std::size_t k, u64 B, const std::function<void(const std::vector<u64>&)>& f) {
    std::vector<u64> t(k, 0);
    for (;;) {
        f(t);
        std::size_t i = 0;
        while (i < k && t[i] == B) t[i++] = 0;
        if (i == k) return;
        ++t[i];
    }
}

} // namespace detail

/// C with |sum_i p^(n_i) a_i| <= C on every solution, in the cases where one is known.
inline std::optional<Integer> partial_sum_bound(const TwoPowerEquation& eq) {
    // The p-part equals d (m = 0), is empty (k = 0), or has terms of one sign that cannot exceed |d|.
    if (!eq.a.empty() && !eq.b.empty() && !detail::sign_uniform(detail::clear(eq))) return std::nullopt;
    Rational d = abs(eq.d);
    Integer n = boost::multiprecision::numerator(d), m = boost::multiprecision::denominator(d);
    return Integer((n + m - 1) / m);
}

/// All solutions with every exponent <= B, by meeting in the middle.
/// PROVEN when the equation has one term or all terms share the sign of d; the bound is then raised as needed.
inline TwoPowerResult solve_two_power_equation(const TwoPowerEquation& eq, u64 B = 128) {
    if (!multiplicatively_independent(eq.p, eq.q)) throw InvalidInput("bases are multiplicatively dependent");
    auto e = detail::clear(eq);
    const std::size_t k = e.a.size(), m = e.b.size();
    TwoPowerResult res;
    bool proven = k + m <= 1 || detail::sign_uniform(e);
    if (proven) {
        // Each term p^n |a| <= |d| (sign-uniform), or the single term equals d.
        u64 need = 0;
        Integer D = abs(e.d);
        for (auto [base, coeffs] : {std::pair{eq.p, &e.a}, std::pair{eq.q, &e.b}})
            for (const auto& c : *coeffs) {
                if (c == 0) continue;
                u64 n = 0;
                for (Integer x = abs(c); x * base <= D; x *= base) ++n;
                need = std::max(need, n);
            }
        B = std::max(B, need);
        if (k + m == 1) B = need;
    }
    if (std::pow(double(B + 1), double(std::max(k, m))) > 4e6) throw ResourceExhausted("two-power search too large");
    std::vector<Integer> ppow(B + 1), qpow(B + 1);
    ppow[0] = qpow[0] = 1;
    for (u64 i = 1; i <= B; ++i) {
        ppow[i] = ppow[i - 1] * eq.p;
        qpow[i] = qpow[i - 1] * eq.q;
    }
    std::map<Integer, std::vector<std::vector<u64>>> left;
    detail::tuples(k, B, [&](const std::vector<u64>& n) {
        Integer v = 0;
        for (std::size_t i = 0; i < k; ++i) v += ppow[n[i]] * e.a[i];
        left[v].push_back(n);
    });
    detail::tuples(m, B, [&](const std::vector<u64>& mm) {
        Integer v = e.d;
        for (std::size_t j = 0; j < m; ++j) v -= qpow[mm[j]] * e.b[j];
        auto it = left.find(v);
        if (it == left.end()) return;
        for (const auto& n : it->second) res.solutions.push_back({n, mm});
    });
    std::sort(res.solutions.begin(), res.solutions.end());
    res.exponent_bound = B;
    res.cert = proven ? Certification::proof() : Certification::up_to(B, "two-power exponent search");
    return res;
}

struct MixedComponent {
    AutomaticN set;
    Certification cert;
};

/// A finite union of normal sets, possibly over different bases.
struct MixedUnion {
    std::vector<MixedComponent> components;

    Certification cert() const {
        Certification c = Certification::proof();
        for (const auto& x : components) c = weakest(c, x.cert);
        return c;
    }
    bool contains(const Integer& z) const {
        return std::any_of(components.begin(), components.end(), [&](const auto& c) { return c.set.contains(z); });
    }
    bool is_empty() const {
        return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.set.is_empty(); });
    }
    std::optional<Integer> next_member(const Integer& from) const {
        std::optional<Integer> best;
        for (const auto& c : components)
            if (auto z = c.set.next_member(from); z && (!best || *z < *best)) best = z;
        return best;
    }
    std::vector<Integer> enumerate_up_to(const Integer& bound) const {
        std::set<Integer> out;
        for (const auto& c : components)
            for (const auto& z : c.set.enumerate_up_to(bound)) out.insert(z);
        return {out.begin(), out.end()};
    }
};

struct CrossOptions {
    u64 exponent_bound = 128;
    Integer enumeration_bound = 1000000;  // for automaton-only sets without a normal form
};

namespace detail {

inline PNormalN tail_only(u64 p, const Integer& threshold, std::vector<PNormalPart> parts) {
    PNormalN s;
    s.threshold = threshold;
    s.tail.p = p;
    s.tail.parts = std::move(parts);
    return s;
}

/// U (base p) intersected with V (base q) from threshold t on.
inline void intersect_parts_cross(const PNormalPart& u, u64 p, const PNormalPart& v, u64 q, const Integer& t,
                                  const CrossOptions& opts, MixedUnion& out) {
    const auto* pu = std::get_if<ProgressionZ>(&u);
    const auto* pv = std::get_if<ProgressionZ>(&v);
    auto add = [&](AutomaticN set, Certification cert) {
        if (!set.is_empty()) out.components.push_back({std::move(set), std::move(cert)});
    };
    if (pu && pv) {
        if (auto c = crt(*pu, *pv)) add(AutomaticN::symbolic(p, tail_only(p, t, {*c})), Certification::proof());
        return;
    }
    if (pu || pv) {
        const auto& D = std::get<ElementaryPNested>(pu ? v : u);
        const auto& P = pu ? *pu : *pv;
        u64 base = pu ? q : p;
        if (auto r = intersect_nested_progression(D, P)) {
            add(AutomaticN::symbolic(base, tail_only(base, t, {r->begin(), r->end()})), Certification::proof());
        } else {
            auto prod = dfa_product(dfa_product(D.dfa(), dfa_progression(base, P.a, P.b)), dfa_at_least(base, t));
            add(AutomaticN::automaton(std::move(prod)), Certification::proof());
        }
        return;
    }
    const auto& D = std::get<ElementaryPNested>(u);
    const auto& E = std::get<ElementaryPNested>(v);
    std::vector<Integer> members;
    Certification cert = Certification::proof();
    if (D.arity() == 0 || E.arity() == 0) {
        // A point on one side: plain membership.
        const auto& point = D.arity() == 0 ? D : E;
        const auto& other = D.arity() == 0 ? E : D;
        Integer z = point.value({});
        if (other.contains(z)) members.push_back(z);
    } else {
        // a_0 + sum p^(l n_i) a_i = b_0 + sum q^(l' m_j) b_j over the stepped bases.
        TwoPowerEquation eq;
        eq.p = ipow_u64(D.p(), static_cast<unsigned>(D.step()));
        eq.q = ipow_u64(E.p(), static_cast<unsigned>(E.step()));
        for (std::size_t i = 1; i <= D.arity(); ++i) eq.a.push_back(D.coefficient(i));
        for (std::size_t j = 1; j <= E.arity(); ++j) eq.b.push_back(-E.coefficient(j));
        eq.d = E.coefficient(0) - D.coefficient(0);
        auto res = solve_two_power_equation(eq, opts.exponent_bound);
        cert = res.cert;
        for (const auto& s : res.solutions) members.push_back(D.value(s.n));
    }
    std::vector<Integer> kept;
    for (const auto& z : members)
        if (z >= t) kept.push_back(z);
    add(AutomaticN::finite(p, std::move(kept)), cert);
}

/// Members of a set with no normal form: all of them when finite, otherwise those up to the bound.
inline std::pair<std::vector<Integer>, Certification> list_members(const AutomaticN& X, const CrossOptions& opts) {
    if (X.is_finite()) {
        Integer cap = ipow(Integer(X.base()), static_cast<unsigned>(X.dfa().size() + 1));
        return {X.enumerate_up_to(cap), Certification::proof()};
    }
    return {X.enumerate_up_to(opts.enumeration_bound), Certification::up_to(opts.enumeration_bound, "enumeration")};
}

} // namespace detail

/// X (base p) intersected with Y (base q), p and q multiplicatively independent, as a union.
inline MixedUnion intersect_two(const AutomaticN& X, const AutomaticN& Y, const CrossOptions& opts = {}) {
    if (X.base() == Y.base()) return {{{intersect_same_p(X, Y), Certification::proof()}}};
    MixedUnion out;
    auto filtered = [&](const std::vector<Integer>& zs, const AutomaticN& other, Certification cert) {
        std::vector<Integer> keep;
        for (const auto& z : zs)
            if (other.contains(z)) keep.push_back(z);
        auto set = AutomaticN::finite(X.base(), std::move(keep));
        if (!set.is_empty()) out.components.push_back({std::move(set), std::move(cert)});
    };
    const bool xs = X.normal_form().has_value(), ys = Y.normal_form().has_value();
    if (!xs || !ys) {
        // One side has no normal form: use whichever side can be listed completely.
        const AutomaticN& A = !xs ? X : Y;
        const AutomaticN& other = !xs ? Y : X;
        if (!A.is_finite() && other.is_finite()) {
            auto [zs, cert] = detail::list_members(other, opts);
            filtered(zs, A, cert);
        } else {
            auto [zs, cert] = detail::list_members(A, opts);
            filtered(zs, other, cert);
        }
        return out;
    }
    if (!multiplicatively_independent(X.base(), Y.base())) throw InvalidInput("bases are multiplicatively dependent");
    const auto& x = *X.normal_form();
    const auto& y = *Y.normal_form();
    Integer t = std::max(x.threshold, y.threshold);
    if (t > 0) filtered(X.enumerate_up_to(t - 1), Y, Certification::proof());
    for (const auto& u : x.tail.parts)
        for (const auto& v : y.tail.parts) detail::intersect_parts_cross(u, X.base(), v, Y.base(), t, opts, out);
    return out;
}

/// S_1 n ... n S_k, folded left to right and distributed over the union components.
inline MixedUnion intersect_multi(const std::vector<MixedComponent>& sets, const CrossOptions& opts = {}) {
    if (sets.empty()) throw InvalidInput("empty intersection");
    MixedUnion cur{{sets.front()}};
    for (std::size_t i = 1; i < sets.size(); ++i) {
        MixedUnion next;
        for (const auto& c : cur.components) {
            auto part = intersect_two(c.set, sets[i].set, opts);
            for (auto& r : part.components) {
                r.cert = weakest(weakest(r.cert, c.cert), sets[i].cert);
                next.components.push_back(std::move(r));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

} // namespace skolem
