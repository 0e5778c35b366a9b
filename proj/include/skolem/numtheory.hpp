#pragma once

/**
 * @file numtheory.hpp
 * @brief Integer utilities: modular arithmetic on 64-bit words, primality,
 *        factorization, and the arbitrary-precision aliases used by the set algebra.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"

namespace skolem {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Reduces a signed value into [0, m).
inline u64 reduce_signed(i64 v, u64 m) {
    if (v >= 0) return static_cast<u64>(v) % m;
    u64 r = static_cast<u64>(-(v + 1)) % m;  // avoids overflow on INT64_MIN
    r = (r + 1) % m;
    return r == 0 ? 0 : m - r;
}

inline u64 reduce_integer(const Integer& v, u64 m) {
    Integer r = v % m;
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

/// Inverse of a modulo m when gcd(a, m) = 1.
inline std::optional<u64> inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) return std::nullopt;
    return reduce_signed(t, m);
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // These witnesses are deterministic for every 64-bit n.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        u64 x = powmod(a % n, d, n);
        if (a % n == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_rho(u64 n, std::mt19937_64& rng) {
    if (n % 2 == 0) return 2;
    std::uniform_int_distribution<u64> dist(1, n - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
        u64 c = dist(rng), y = dist(rng), m = 128, g = 1, q = 1, x = 0, ys = 0;
        u64 r = 1;
        auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1 && r < (1ULL << 26));
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    throw FactorizationFailed("pollard rho failed to split " + std::to_string(n));
}

inline void factor_into(u64 n, std::map<u64, unsigned>& out, std::mt19937_64& rng) {
    if (n == 1) return;
    if (is_prime(n)) { ++out[n]; return; }
    u64 d = pollard_rho(n, rng);
    factor_into(d, out, rng);
    factor_into(n / d, out, rng);
}

} // namespace detail

/// Prime factorization: trial division by small primes, then Pollard rho.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    if (n == 0) throw InvalidInput("cannot factor zero");
    std::map<u64, unsigned> f;
    for (u64 p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) { ++f[p]; n /= p; }
    }
    std::mt19937_64 rng(0x5eed);
    if (n > 1) detail::factor_into(n, f, rng);
    return {f.begin(), f.end()};
}

/// If n = p^e for a prime p, returns (p, e).
inline std::optional<std::pair<u64, unsigned>> as_prime_power(u64 n) {
    if (n < 2) return std::nullopt;
    auto f = factorize(n);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

inline Integer ipow(const Integer& base, unsigned exp) {
    Integer r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

inline u64 ipow_u64(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

/// Largest r with r^k <= n.
inline u64 integer_root(u64 n, unsigned k) {
    if (k == 1 || n < 2) return n;
    u64 lo = 1, hi = 1ULL << (64 / k + 1);
    while (lo < hi) {
        u64 mid = lo + (hi - lo + 1) / 2;
        Integer pw = ipow(Integer(mid), k);
        if (pw <= n) lo = mid; else hi = mid - 1;
    }
    return lo;
}

/// p and q are multiplicatively independent iff they are not both powers of a
/// common integer (equivalently p^i = q^j has no solution with i, j >= 1).
inline bool multiplicatively_independent(u64 p, u64 q) {
    if (p < 2 || q < 2) return false;
    // Reduce each to its primitive root: the smallest b with b^k = n.
    auto primitive = [](u64 n) {
        for (unsigned k = 63; k >= 2; --k) {
            u64 r = integer_root(n, k);
            if (r >= 2 && ipow(Integer(r), k) == n) return r;
        }
        return n;
    };
    return primitive(p) != primitive(q);
}

/// Generalized binomial coefficient C(m, k) for integer m and k >= 0.
inline Integer binomial(i64 m, u64 k) {
    Integer num = 1, den = 1;
    for (u64 i = 0; i < k; ++i) {
        num *= Integer(m) - Integer(i);
        den *= Integer(i + 1);
    }
    return num / den;
}

/// C(n, k) mod m for n, k >= 0 using exact arithmetic on the falling factorial.
inline u64 binomial_mod(u64 n, u64 k, u64 m) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    Integer r = 1;
    for (u64 i = 0; i < k; ++i) {
        r *= Integer(n - i);
        r /= Integer(i + 1);
    }
    return reduce_integer(r, m);
}

/// Number of base-p digits needed for n (0 has zero digits).
inline unsigned digit_length(Integer n, u64 p) {
    unsigned len = 0;
    while (n > 0) { n /= p; ++len; }
    return len;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

/// Floor division and non-negative remainder for arbitrary-precision integers.
inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Multiplicative order data of k -> base^k mod m: returns (pre-period, period).
inline std::pair<u64, u64> power_cycle(u64 base, u64 m) {
    std::map<u64, u64> seen;
    u64 v = 1 % m;
    for (u64 k = 0;; ++k) {
        auto [it, inserted] = seen.emplace(v, k);
        if (!inserted) return {it->second, k - it->second};
        v = mulmod(v, base % m, m);
    }
}

} // namespace skolem
