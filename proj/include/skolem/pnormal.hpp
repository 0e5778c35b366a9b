#pragma once

/**
 * @file pnormal.hpp
 * @brief p-normal subsets of Z and N.
 *
 * An elementary p-nested set is {a_0 + p^(l k_1) a_1 + ... + p^(l k_r) a_r : k_i >= 0}
 * with rational a_i = A_i / M taking only integer values. A p-normal subset of Z
 * is a finite union of such sets and progressions aZ + b; a p-normal subset of N
 * agrees with one on [n_0, inf) and is an explicit finite set below n_0.
 */

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "skolem/dfa.hpp"
#include "skolem/errors.hpp"
#include "skolem/numtheory.hpp"

namespace skolem {

/// If q = p^j for a prime p, returns (p, j).
inline std::optional<std::pair<u64, unsigned>> prime_power_of(u64 q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return std::pair<u64, unsigned>{f[0].first, static_cast<unsigned>(f[0].second)};
}

/// Preperiod and period of k -> base^k mod m.
inline std::pair<u64, u64> power_cycle_mod(const Integer& base, const Integer& m) {
    if (m == 1) return {0, 1};
    std::map<Integer, u64> seen;
    Integer x = 1 % m;
    for (u64 k = 0;; ++k) {
        auto [it, ins] = seen.emplace(x, k);
        if (!ins) return {it->second, k - it->second};
        if (k > 50000000) throw ResourceExhausted("power cycle too long");
        x = x * base % m;
    }
}

class ElementaryPNested {
public:
    ElementaryPNested() = default;

    /// coefficients[0] is the constant a_0. The base may be a prime power; it is rewritten over its prime.
    static ElementaryPNested make(u64 base, u64 l, const std::vector<Rational>& coefficients) {
        if (coefficients.empty()) throw InvalidInput("nested set needs a constant term");
        if (l == 0) throw InvalidInput("nested step must be positive");
        auto pp = prime_power_of(base);
        if (!pp) throw InvalidInput("nested base must be a prime power");
        ElementaryPNested D;
        D.p_ = pp->first;
        D.l_ = l * pp->second;
        D.M_ = 1;
        for (const auto& c : coefficients) D.M_ = lcm_int(D.M_, boost::multiprecision::denominator(c));
        for (const auto& c : coefficients)
            D.A_.push_back(boost::multiprecision::numerator(c) * (D.M_ / boost::multiprecision::denominator(c)));
        if (!D.integral()) throw InvalidInput("nested set takes non-integer values");
        return D;
    }

    u64 p() const { return p_; }
    u64 step() const { return l_; }
    std::size_t arity() const { return A_.size() - 1; }
    const Integer& denominator() const { return M_; }
    const std::vector<Integer>& numerators() const { return A_; }
    Rational coefficient(std::size_t i) const { return Rational(A_[i], M_); }

    bool operator==(const ElementaryPNested& o) const {
        return p_ == o.p_ && l_ == o.l_ && M_ == o.M_ && A_ == o.A_;
    }
    bool operator<(const ElementaryPNested& o) const {
        return std::tie(p_, l_, M_, A_) < std::tie(o.p_, o.l_, o.M_, o.A_);
    }

    /// Every choice of exponents gives an integer: all residues of p^(lk) mod M are tried.
    bool integral() const {
        if (M_ == 1) return true;
        Integer base = ipow(Integer(p_), l_);
        std::set<Integer> residues;
        auto [mu, t] = power_cycle_mod(base, M_);
        Integer x = 1 % M_;
        for (u64 k = 0; k < mu + t; ++k, x = x * base % M_) residues.insert(x);
        std::set<Integer> sums{floor_mod(A_[0], M_)};
        for (std::size_t i = 1; i < A_.size(); ++i) {
            std::set<Integer> next;
            for (const auto& s : sums)
                for (const auto& r : residues) next.insert(floor_mod(s + r * A_[i], M_));
            sums = std::move(next);
        }
        return sums.size() == 1 && *sums.begin() == 0;
    }

    Integer value(const std::vector<u64>& ks) const {
        Integer v = A_[0];
        for (std::size_t i = 1; i < A_.size(); ++i) v += ipow(Integer(p_), l_ * ks.at(i - 1)) * A_[i];
        return v / M_;
    }

    /// Same set with every coefficient negated.
    ElementaryPNested negated() const {
        ElementaryPNested D = *this;
        for (auto& a : D.A_) a = -a;
        D.dfa_.reset();
        D.neg_dfa_.reset();
        return D;
    }

    /// Members obtained with every exponent k_i <= kmax.
    std::vector<Integer> members_with_exponents_up_to(u64 kmax) const {
        std::set<Integer> out;
        std::vector<u64> ks(arity(), 0);
        for (;;) {
            out.insert(value(ks));
            std::size_t i = 0;
            while (i < ks.size() && ks[i] == kmax) ks[i++] = 0;
            if (i == ks.size()) break;
            ++ks[i];
        }
        return {out.begin(), out.end()};
    }

    /// Nonnegative members as a base-p digit automaton.
    const DigitDFA& dfa(std::size_t budget = kDefaultStateBudget) const {
        if (!dfa_) dfa_ = std::make_shared<DigitDFA>(build_dfa_(budget));
        return *dfa_;
    }

    bool contains(const Integer& z) const {
        if (z >= 0) return dfa().accepts(z);
        if (!neg_dfa_) neg_dfa_ = std::make_shared<DigitDFA>(negated().build_dfa_(kDefaultStateBudget));
        return neg_dfa_->accepts(-z);
    }

    std::string str() const;

private:
    DigitDFA build_dfa_(std::size_t budget) const;

    u64 p_ = 2;
    u64 l_ = 1;
    Integer M_ = 1;
    std::vector<Integer> A_;
    mutable std::shared_ptr<DigitDFA> dfa_, neg_dfa_;
};

inline std::string rational_str(const Rational& r) {
    auto n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

inline std::string ElementaryPNested::str() const {
    std::string s = "{";
    bool first = true;
    auto put = [&](const Rational& c, const std::string& power) {
        if (c == 0) return;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (!first) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        first = false;
        if (power.empty()) s += rational_str(a);
        else s += (a == 1 ? "" : rational_str(a) + "*") + power;
    };
    put(coefficient(0), "");
    for (std::size_t i = 1; i < A_.size(); ++i) {
        std::string k = "k" + std::to_string(i);
        put(coefficient(i), std::to_string(p_) + "^" + (l_ == 1 ? k : "(" + std::to_string(l_) + "*" + k + ")"));
    }
    if (first) s += "0";
    return s + " : k >= 0}";
}

inline DigitDFA ElementaryPNested::build_dfa_(std::size_t budget) const {
    // Nondeterministic carry machine reading the digits of z: M z = A_0 + sum A_i p^(l k_i).
    // State: position mod l, mask of terms already placed, carry.
    // Reading digit d at a position j = 0 mod l may place any set Q of the remaining terms:
    // carry' = (carry + M d - sum_{i in Q} A_i) / p, which must be exact.
    const std::size_t r = arity();
    if (r > 12) throw ResourceExhausted("nested arity too large");
    Integer bound = abs(A_[0]) + M_ * p_;
    for (std::size_t i = 1; i <= r; ++i) bound += abs(A_[i]);
    if (bound > Integer(1) << 60) throw ResourceExhausted("nested coefficients too large for the carry automaton");
    const i64 M = static_cast<i64>(M_);
    std::vector<i64> A;
    for (const auto& a : A_) A.push_back(static_cast<i64>(a));
    const u32 full = (1u << r) - 1;
    std::vector<i64> subset_sum(full + 1, 0);
    for (u32 q = 1; q <= full; ++q) {
        u32 low = q & (~q + 1);
        subset_sum[q] = subset_sum[q & (q - 1)] + A[1 + static_cast<std::size_t>(std::countr_zero(low))];
    }

    struct Node {
        u64 pos;
        u32 mask;
        i64 carry;
        bool operator==(const Node&) const = default;
    };
    struct NodeHash {
        std::size_t operator()(const Node& n) const noexcept {
            return (std::hash<i64>{}(n.carry) * 31 + n.mask) * 1000003 + n.pos;
        }
    };
    std::unordered_map<Node, u32, NodeHash> id;
    std::vector<Node> nodes;
    std::vector<std::vector<std::vector<u32>>> edges;  // [node][digit] -> successors
    auto intern = [&](const Node& n) {
        auto [it, ins] = id.emplace(n, static_cast<u32>(nodes.size()));
        if (ins) {
            if (nodes.size() >= budget) throw ResourceExhausted("nested automaton state budget exceeded");
            nodes.push_back(n);
        }
        return it->second;
    };
    intern({0, 0, -A[0]});
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        Node n = nodes[k];
        std::vector<std::vector<u32>> out(p_);
        for (u64 d = 0; d < p_; ++d) {
            i64 base = n.carry + M * static_cast<i64>(d);
            u32 rest = full & ~n.mask;
            // Enumerate subsets of the unplaced terms (only the empty set off the lattice).
            for (u32 q = rest;; q = (q - 1) & rest) {
                if (q == 0 || n.pos == 0) {
                    i64 v = base - subset_sum[q];
                    if (v % static_cast<i64>(p_) == 0)
                        out[d].push_back(intern({(n.pos + 1) % l_, n.mask | q, v / static_cast<i64>(p_)}));
                }
                if (q == 0) break;
            }
            std::sort(out[d].begin(), out[d].end());
            out[d].erase(std::unique(out[d].begin(), out[d].end()), out[d].end());
        }
        edges.push_back(std::move(out));
    }
    // good: a final node (all placed, zero carry) is reachable by reading zeros.
    std::vector<std::vector<u32>> zero_rev(nodes.size());
    for (u32 k = 0; k < nodes.size(); ++k)
        for (u32 t : edges[k][0]) zero_rev[t].push_back(k);
    std::vector<bool> good(nodes.size(), false);
    std::vector<u32> work;
    for (u32 k = 0; k < nodes.size(); ++k)
        if (nodes[k].mask == full && nodes[k].carry == 0) {
            good[k] = true;
            work.push_back(k);
        }
    while (!work.empty()) {
        u32 k = work.back();
        work.pop_back();
        for (u32 s : zero_rev[k])
            if (!good[s]) {
                good[s] = true;
                work.push_back(s);
            }
    }
    using Key = std::vector<u32>;
    return build_dfa<Key, VectorHash>(
        p_, Key{0},
        [&](const Key& S, u64 d) -> std::optional<Key> {
            Key T;
            for (u32 s : S) T.insert(T.end(), edges[s][d].begin(), edges[s][d].end());
            std::sort(T.begin(), T.end());
            T.erase(std::unique(T.begin(), T.end()), T.end());
            if (T.empty()) return std::nullopt;
            return T;
        },
        [&](const Key& S) { return std::any_of(S.begin(), S.end(), [&](u32 s) { return good[s]; }); }, budget);
}

/// aZ + b with a >= 1 and 0 <= b < a.
struct ProgressionZ {
    Integer a = 1;
    Integer b = 0;

    static ProgressionZ make(const Integer& a, const Integer& b) {
        if (a < 1) throw InvalidInput("progression modulus must be positive");
        return {a, floor_mod(b, a)};
    }
    bool contains(const Integer& z) const { return floor_mod(z - b, a) == 0; }
    bool operator==(const ProgressionZ&) const = default;
    bool operator<(const ProgressionZ& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
    std::string str() const { return a == 1 ? "Z" : a.str() + "Z + " + b.str(); }
};

using PNormalPart = std::variant<ElementaryPNested, ProgressionZ>;

inline bool part_contains(const PNormalPart& part, const Integer& z) {
    return std::visit([&](const auto& x) { return x.contains(z); }, part);
}

inline std::string part_str(const PNormalPart& part) {
    return std::visit([](const auto& x) { return x.str(); }, part);
}

/// Finite union of elementary p-nested sets and progressions.
struct PNormalZ {
    u64 p = 2;
    std::vector<PNormalPart> parts;

    bool contains(const Integer& z) const {
        return std::any_of(parts.begin(), parts.end(), [&](const auto& q) { return part_contains(q, z); });
    }
    bool empty_union() const { return parts.empty(); }
    std::string str() const {
        if (parts.empty()) return "{}";
        std::string s;
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " u " : "") + part_str(parts[i]);
        return s;
    }
};

/// Subset of N: the finite set below the threshold, the tail's members from the threshold on.
struct PNormalN {
    Integer threshold = 0;
    std::vector<Integer> finite;
    PNormalZ tail;

    bool contains(const Integer& z) const {
        if (z < 0) return false;
        if (z < threshold) return std::binary_search(finite.begin(), finite.end(), z);
        return tail.contains(z);
    }
    std::string str() const {
        std::string s;
        if (!finite.empty()) {
            s = "{";
            for (std::size_t i = 0; i < finite.size(); ++i) s += (i ? ", " : "") + finite[i].str();
            s += "} u ";
        }
        s += "(" + tail.str() + ")";
        if (threshold > 0) s += " n >= " + threshold.str();
        return s;
    }
};

/// Residues of D modulo a, as a union of cosets of aZ.
inline PNormalZ normalize_succinct_z(const Integer& a, const ElementaryPNested& D) {
    if (a < 1) throw InvalidInput("subgroup index must be positive");
    PNormalZ out{D.p(), {}};
    if (a == 1) {
        out.parts.push_back(ProgressionZ::make(1, 0));
        return out;
    }
    const Integer m = a * D.denominator();
    const Integer base = ipow(Integer(D.p()), D.step());
    auto [mu, t] = power_cycle_mod(base, m);
    std::set<Integer> residues;
    Integer x = 1 % m;
    for (u64 k = 0; k < mu + t; ++k, x = x * base % m) residues.insert(x);
    std::set<Integer> sums{floor_mod(D.numerators()[0], m)};
    for (std::size_t i = 1; i <= D.arity(); ++i) {
        std::set<Integer> next;
        for (const auto& s : sums)
            for (const auto& r : residues) next.insert(floor_mod(s + r * D.numerators()[i], m));
        sums = std::move(next);
    }
    std::set<Integer> cosets;
    for (const auto& s : sums) cosets.insert(floor_mod(s / D.denominator(), a));
    for (const auto& b : cosets) out.parts.push_back(ProgressionZ::make(a, b));
    return out;
}

/// D intersected with aZ + b as a union of nested sets, or nullopt past the case budget.
inline std::optional<std::vector<ElementaryPNested>> intersect_nested_progression(const ElementaryPNested& D,
                                                                                   const ProgressionZ& P,
                                                                                   u64 budget = 200000) {
    if (P.a == 1) return std::vector<ElementaryPNested>{D};
    const Integer m = P.a * D.denominator();
    const Integer base = ipow(Integer(D.p()), D.step());
    auto [mu, t] = power_cycle_mod(base, m);
    const std::size_t r = D.arity();
    const u64 options = mu + t;
    Integer cases = 1;
    for (std::size_t i = 0; i < r; ++i) cases *= options;
    if (cases > budget) return std::nullopt;
    std::vector<Integer> pw(options);  // base^k mod m, and the exact value for fixed exponents
    std::vector<Integer> exact(mu);
    Integer x = 1;
    for (u64 k = 0; k < options; ++k) {
        pw[k] = x % m;
        if (k < mu) exact[k] = x;
        x *= base;
    }
    const auto& A = D.numerators();
    const Integer target = floor_mod(P.b * D.denominator(), m);
    std::set<ElementaryPNested> found;
    std::vector<u64> choice(r, 0);
    for (;;) {
        Integer s = A[0];
        for (std::size_t i = 0; i < r; ++i) s += pw[choice[i]] * A[i + 1];
        if (floor_mod(s, m) == target) {
            // Fixed exponents fold into the constant; the rest become k = s + t k'.
            Rational a0(A[0], D.denominator());
            std::vector<Rational> coeffs{0};
            for (std::size_t i = 0; i < r; ++i) {
                Rational ai(A[i + 1], D.denominator());
                if (choice[i] < mu) a0 += ai * Rational(exact[choice[i]]);
                else coeffs.push_back(ai * Rational(ipow(base, choice[i])));
            }
            coeffs[0] = a0;
            if (coeffs.size() == 1) coeffs.push_back(0);  // keep a valid arity-1 description of a point
            found.insert(ElementaryPNested::make(D.p(), D.step() * t, coeffs));
        }
        std::size_t i = 0;
        while (i < r && choice[i] + 1 == options) choice[i++] = 0;
        if (i == r) break;
        ++choice[i];
    }
    return std::vector<ElementaryPNested>(found.begin(), found.end());
}

} // namespace skolem
