#pragma once

/**
 * @file dfa.hpp
 * @brief Deterministic digit automata over base-b expansions, least significant digit first.
 *
 * A DigitDFA represents a set of nonnegative integers: z is a member when the
 * automaton accepts the digits of z followed by any number of zero digits.
 * Every construction here keeps acceptance invariant under appending zeros,
 * so reading the plain expansion is enough.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/numtheory.hpp"

namespace skolem {

inline constexpr std::size_t kDefaultStateBudget = 1000000;

struct VectorHash {
    template <class T>
    std::size_t operator()(const std::vector<T>& v) const noexcept {
        std::size_t h = v.size();
        for (const auto& x : v) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL;
        return h;
    }
};

struct PairHash {
    template <class A, class B>
    std::size_t operator()(const std::pair<A, B>& p) const noexcept {
        return std::hash<A>{}(p.first) * 0x9e3779b97f4a7c15ULL ^ std::hash<B>{}(p.second);
    }
};

class DigitDFA {
public:
    DigitDFA() = default;

    DigitDFA(u64 base, std::uint32_t start, std::vector<std::uint32_t> delta, std::vector<bool> accepting)
        : base_(base), start_(start), delta_(std::move(delta)), accepting_(std::move(accepting)) {}

    u64 base() const { return base_; }
    std::uint32_t start() const { return start_; }
    std::size_t size() const { return accepting_.size(); }
    std::uint32_t next(std::uint32_t s, u64 d) const { return delta_[s * base_ + d]; }
    bool accepting(std::uint32_t s) const { return accepting_[s]; }
    const std::vector<std::uint32_t>& table() const { return delta_; }
    const std::vector<bool>& accepting_states() const { return accepting_; }

    bool operator==(const DigitDFA&) const = default;

    static std::vector<u64> digits(Integer z, u64 base) {
        std::vector<u64> out;
        while (z > 0) {
            out.push_back(static_cast<u64>(z % base));
            z /= base;
        }
        return out;
    }

    bool accepts(const Integer& z) const {
        if (z < 0) return false;
        std::uint32_t s = start_;
        for (u64 d : digits(z, base_)) s = next(s, d);
        return accepting_[s];
    }

    /// Keeps reachable states, merges equivalent ones and numbers them in BFS order from the start.
    DigitDFA minimized() const;

    bool is_empty() const {
        auto r = reachable();
        for (std::size_t s = 0; s < size(); ++s)
            if (r[s] && accepting_[s]) return false;
        return true;
    }

    /// True when the language describes finitely many integers.
    bool is_finite() const;

    /// Smallest member >= from with at most max_digits digits.
    std::optional<Integer> next_member(const Integer& from, std::size_t max_digits = 4096) const;

    std::vector<Integer> enumerate_up_to(const Integer& bound) const {
        std::vector<Integer> out;
        Integer z = 0;
        std::size_t cap = digits(bound, base_).size() + 1;
        while (auto m = next_member(z, cap)) {
            if (*m > bound) break;
            out.push_back(*m);
            z = *m + 1;
        }
        return out;
    }

    std::vector<bool> reachable() const {
        std::vector<bool> seen(size(), false);
        std::deque<std::uint32_t> q{start_};
        seen[start_] = true;
        while (!q.empty()) {
            auto s = q.front();
            q.pop_front();
            for (u64 d = 0; d < base_; ++d) {
                auto t = next(s, d);
                if (!seen[t]) {
                    seen[t] = true;
                    q.push_back(t);
                }
            }
        }
        return seen;
    }

private:
    u64 base_ = 2;
    std::uint32_t start_ = 0;
    std::vector<std::uint32_t> delta_;
    std::vector<bool> accepting_;
};

/// Explores the automaton of a state-key machine; step returning nullopt means a rejecting sink.
template <class Key, class Hash = std::hash<Key>>
DigitDFA build_dfa(u64 base, const Key& start, const std::function<std::optional<Key>(const Key&, u64)>& step,
                   const std::function<bool(const Key&)>& accept, std::size_t budget = kDefaultStateBudget) {
    std::unordered_map<Key, std::uint32_t, Hash> index;
    std::vector<Key> keys;
    std::vector<std::uint32_t> delta;
    std::vector<bool> acc;
    constexpr std::uint32_t kDead = 0;
    // State 0 is the sink.
    delta.assign(base, kDead);
    acc.push_back(false);
    keys.push_back(start);  // placeholder for the sink
    auto intern = [&](const Key& k) -> std::uint32_t {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (acc.size() >= budget) throw ResourceExhausted("automaton state budget exceeded");
        auto id = static_cast<std::uint32_t>(acc.size());
        index.emplace(k, id);
        keys.push_back(k);
        acc.push_back(accept(k));
        delta.resize(delta.size() + base, kDead);
        return id;
    };
    std::uint32_t s0 = intern(start);
    for (std::uint32_t s = 1; s < acc.size(); ++s) {
        for (u64 d = 0; d < base; ++d) {
            Key k = keys[s];
            auto t = step(k, d);
            delta[s * base + d] = t ? intern(*t) : kDead;
        }
    }
    return DigitDFA(base, s0, std::move(delta), std::move(acc)).minimized();
}

inline DigitDFA DigitDFA::minimized() const {
    const u64 b = base_;
    auto reach = reachable();
    std::vector<std::uint32_t> live;
    for (std::uint32_t s = 0; s < size(); ++s)
        if (reach[s]) live.push_back(s);
    // Moore refinement on reachable states.
    std::vector<std::uint32_t> cls(size(), 0);
    for (auto s : live) cls[s] = accepting_[s] ? 1 : 0;
    std::size_t classes = 0;
    for (;;) {
        std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash> sig;
        std::vector<std::uint32_t> ncls(size(), 0);
        for (auto s : live) {
            std::vector<std::uint32_t> key;
            key.reserve(b + 1);
            key.push_back(cls[s]);
            for (u64 d = 0; d < b; ++d) key.push_back(cls[next(s, d)]);
            auto [it, ins] = sig.emplace(std::move(key), static_cast<std::uint32_t>(sig.size()));
            ncls[s] = it->second;
        }
        bool stable = sig.size() == classes;
        classes = sig.size();
        cls = std::move(ncls);
        if (stable) break;
    }
    // Canonical numbering by BFS over digits in increasing order.
    std::vector<std::int64_t> order(classes, -1);
    std::vector<std::uint32_t> rep(classes, 0);
    for (auto s : live) rep[cls[s]] = s;
    std::deque<std::uint32_t> q{cls[start_]};
    order[cls[start_]] = 0;
    std::uint32_t count = 1;
    std::vector<std::uint32_t> seq{cls[start_]};
    while (!q.empty()) {
        auto c = q.front();
        q.pop_front();
        for (u64 d = 0; d < b; ++d) {
            auto t = cls[next(rep[c], d)];
            if (order[t] < 0) {
                order[t] = count++;
                q.push_back(t);
                seq.push_back(t);
            }
        }
    }
    std::vector<std::uint32_t> delta(count * b);
    std::vector<bool> acc(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        auto r = rep[seq[i]];
        acc[i] = accepting_[r];
        for (u64 d = 0; d < b; ++d) delta[i * b + d] = static_cast<std::uint32_t>(order[cls[next(r, d)]]);
    }
    return {b, 0, std::move(delta), std::move(acc)};
}

inline bool DigitDFA::is_finite() const {
    const std::size_t n = size();
    const u64 b = base_;
    // co_acc: can reach acceptance; co_nz: can reach acceptance along a path with a nonzero digit.
    std::vector<bool> co_acc(accepting_), co_nz(n, false);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::uint32_t s = 0; s < n; ++s) {
            for (u64 d = 0; d < b; ++d) {
                auto t = next(s, d);
                if (!co_acc[s] && co_acc[t]) co_acc[s] = changed = true;
                if (!co_nz[s] && (co_nz[t] || (d != 0 && co_acc[t]))) co_nz[s] = changed = true;
            }
        }
    }
    // Iterative Tarjan: a reachable state on a cycle with co_nz gives infinitely many members.
    auto reach = reachable();
    std::vector<std::int64_t> idx(n, -1), low(n, 0);
    std::vector<bool> on(n, false);
    std::vector<std::uint32_t> stack;
    std::int64_t counter = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (!reach[root] || idx[root] >= 0) continue;
        std::vector<std::pair<std::uint32_t, u64>> call{{root, 0}};
        idx[root] = low[root] = counter++;
        stack.push_back(root);
        on[root] = true;
        while (!call.empty()) {
            auto& [v, d] = call.back();
            if (d < b) {
                auto w = next(v, d++);
                if (idx[w] < 0) {
                    idx[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = true;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[v] = std::min(low[v], idx[w]);
                }
                continue;
            }
            std::uint32_t v0 = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[v0]);
            if (low[v0] != idx[v0]) continue;
            std::vector<std::uint32_t> comp;
            std::uint32_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on[w] = false;
                comp.push_back(w);
            } while (w != v0);
            bool cyclic = comp.size() > 1;
            if (!cyclic)
                for (u64 e = 0; e < b; ++e) cyclic = cyclic || next(v0, e) == v0;
            if (!cyclic) continue;
            for (auto u : comp)
                if (co_nz[u]) return false;
        }
    }
    return true;
}

inline std::optional<Integer> DigitDFA::next_member(const Integer& from, std::size_t max_digits) const {
    if (is_empty()) return std::nullopt;
    Integer lo = from < 0 ? Integer(0) : from;
    if (lo == 0 && accepting_[start_]) return Integer(0);
    const std::size_t n = size();
    const u64 b = base_;
    auto low_digits = digits(lo, b);
    // forward[k]: states reachable after exactly k digits.
    std::vector<std::vector<bool>> forward{std::vector<bool>(n, false)};
    forward[0][start_] = true;
    auto extend = [&] {
        std::vector<bool> nxt(n, false);
        for (std::uint32_t s = 0; s < n; ++s)
            if (forward.back()[s])
                for (u64 d = 0; d < b; ++d) nxt[next(s, d)] = true;
        forward.push_back(std::move(nxt));
    };
    auto pre = [&](const std::vector<bool>& target, u64 d) {
        std::vector<bool> out(n, false);
        for (std::uint32_t s = 0; s < n; ++s) out[s] = target[next(s, d)];
        return out;
    };
    auto meets = [&](const std::vector<bool>& a, const std::vector<bool>& f) {
        for (std::size_t s = 0; s < n; ++s)
            if (a[s] && f[s]) return true;
        return false;
    };
    for (std::size_t L = std::max<std::size_t>(1, low_digits.size()); L <= max_digits; ++L) {
        if (n * L > 50000000) throw ResourceExhausted("automaton enumeration too large");
        while (forward.size() < L) extend();
        std::vector<u64> lim(L, 0);
        for (std::size_t i = 0; i < low_digits.size(); ++i) lim[i] = low_digits[i];
        std::vector<u64> chosen(L, 0);
        // Depth-first from the most significant digit; only the tight branch can dead-end.
        std::function<bool(std::size_t, const std::vector<bool>&, bool)> dfs =
            [&](std::size_t k, const std::vector<bool>& target, bool tight) -> bool {
            for (u64 d = tight ? lim[k] : 0; d < b; ++d) {
                auto t = pre(target, d);
                if (!meets(t, forward[k])) continue;
                chosen[k] = d;
                if (k == 0) return true;
                if (dfs(k - 1, t, tight && d == lim[k])) return true;
            }
            return false;
        };
        if (dfs(L - 1, accepting_, true)) {
            Integer z = 0;
            for (std::size_t k = L; k-- > 0;) z = z * b + chosen[k];
            return z;
        }
    }
    return std::nullopt;
}

inline DigitDFA dfa_all(u64 base) { return {base, 0, std::vector<std::uint32_t>(base, 0), {true}}; }
inline DigitDFA dfa_none(u64 base) { return {base, 0, std::vector<std::uint32_t>(base, 0), {false}}; }

inline DigitDFA dfa_complement(const DigitDFA& a) {
    auto acc = a.accepting_states();
    acc.flip();
    return DigitDFA(a.base(), a.start(), a.table(), std::move(acc)).minimized();
}

enum class SetOp { And, Or, AndNot };

inline DigitDFA dfa_product(const DigitDFA& a, const DigitDFA& b, SetOp op = SetOp::And,
                            std::size_t budget = kDefaultStateBudget) {
    if (a.base() != b.base()) throw InvalidInput("automata over different bases");
    using Key = std::pair<std::uint32_t, std::uint32_t>;
    return build_dfa<Key, PairHash>(
        a.base(), {a.start(), b.start()},
        [&](const Key& k, u64 d) -> std::optional<Key> { return Key{a.next(k.first, d), b.next(k.second, d)}; },
        [&](const Key& k) {
            bool x = a.accepting(k.first), y = b.accepting(k.second);
            switch (op) {
                case SetOp::And: return x && y;
                case SetOp::Or: return x || y;
                case SetOp::AndNot: return x && !y;
            }
            return false;
        },
        budget);
}

/// Nonnegative z with z = b (mod a).
inline DigitDFA dfa_progression(u64 base, const Integer& a, const Integer& b,
                                std::size_t budget = kDefaultStateBudget) {
    if (a < 1) throw InvalidInput("progression modulus must be positive");
    if (a == 1) return dfa_all(base);
    if (a > Integer(std::numeric_limits<u64>::max() >> 2)) throw ResourceExhausted("progression modulus too large");
    u64 m = static_cast<u64>(a);
    u64 r = static_cast<u64>(((b % a) + a) % a);
    using Key = std::pair<u64, u64>;  // value mod m, base^j mod m
    return build_dfa<Key, PairHash>(
        base, {0, 1 % m},
        [&](const Key& k, u64 d) -> std::optional<Key> {
            u64 v = static_cast<u64>((static_cast<u128>(d % m) * k.second + k.first) % m);
            return Key{v, static_cast<u64>(static_cast<u128>(k.second) * (base % m) % m)};
        },
        [&](const Key& k) { return k.first == r; }, budget);
}

/// Exactly the given nonnegative integers.
inline DigitDFA dfa_finite(u64 base, std::vector<Integer> members) {
    members.erase(std::remove_if(members.begin(), members.end(), [](const Integer& z) { return z < 0; }),
                  members.end());
    if (members.empty()) return dfa_none(base);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    // Trie over digit prefixes: state = (value of the prefix, digits read, capped at the longest member).
    std::size_t len = DigitDFA::digits(members.back(), base).size();
    std::vector<Integer> powers{1};
    for (std::size_t j = 0; j < len; ++j) powers.push_back(powers.back() * base);
    std::unordered_map<std::string, bool> prefix;  // "j:value mod base^j" -> is any member consistent
    for (const auto& z : members)
        for (std::size_t j = 0; j <= len; ++j) prefix[std::to_string(j) + ":" + Integer(z % powers[j]).str()] = true;
    auto is_member = [&](const Integer& v) { return std::binary_search(members.begin(), members.end(), v); };
    using Key = std::string;
    auto encode = [](std::size_t j, const Integer& v) { return std::to_string(j) + ":" + v.str(); };
    auto decode = [](const Key& k) {
        auto c = k.find(':');
        return std::pair<std::size_t, Integer>{std::stoul(k.substr(0, c)), Integer(k.substr(c + 1))};
    };
    return build_dfa<Key>(
        base, encode(0, 0),
        [&](const Key& k, u64 d) -> std::optional<Key> {
            auto [j, v] = decode(k);
            if (j >= len) return d == 0 ? std::optional<Key>(k) : std::nullopt;
            Integer nv = v + powers[j] * d;
            if (!prefix.count(encode(j + 1, nv))) return std::nullopt;
            return encode(j + 1, nv);
        },
        [&](const Key& k) { return is_member(decode(k).second); });
}

/// Integers z >= T.
inline DigitDFA dfa_at_least(u64 base, const Integer& T) {
    if (T <= 0) return dfa_all(base);
    auto td = DigitDFA::digits(T, base);
    const int len = static_cast<int>(td.size());
    // (digits read capped at len, comparison of the low part with T's low part: -1, 0, 1), or len+1 once above.
    using Key = std::pair<int, int>;
    return build_dfa<Key, PairHash>(
        base, {0, 0},
        [&](const Key& k, u64 d) -> std::optional<Key> {
            auto [j, c] = k;
            if (j > len) return k;
            if (j == len) return d == 0 ? k : Key{len + 1, 1};
            int nc = d > td[j] ? 1 : d < td[j] ? -1 : c;
            return Key{j + 1, nc};
        },
        [&](const Key& k) { return k.first > len || (k.first == len && k.second >= 0); });
}

} // namespace skolem
