#pragma once

/**
 * @file upoly.hpp
 * @brief Dense univariate polynomials and truncated power series over a ring.
 *
 * Coefficients are stored lowest degree first. T is RingElem or Fraction;
 * both lack a usable default value, so every routine that may produce an
 * empty result takes an explicit zero.
 */

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace skolem {

template <class T>
using UPoly = std::vector<T>;

namespace upoly {

template <class T>
UPoly<T> trim(UPoly<T> p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

template <class T>
UPoly<T> add(const UPoly<T>& a, const UPoly<T>& b, const T& zero) {
    UPoly<T> r(std::max(a.size(), b.size()), zero);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    return r;
}

template <class T>
UPoly<T> sub(const UPoly<T>& a, const UPoly<T>& b, const T& zero) {
    UPoly<T> r(std::max(a.size(), b.size()), zero);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

/// Product truncated to degrees < limit (limit = 0 means no truncation).
template <class T>
UPoly<T> mul(const UPoly<T>& a, const UPoly<T>& b, const T& zero, std::size_t limit = 0) {
    if (a.empty() || b.empty()) return {};
    std::size_t n = a.size() + b.size() - 1;
    if (limit) n = std::min(n, limit);
    UPoly<T> r(n, zero);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].is_zero()) r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

template <class T>
UPoly<T> scale(const UPoly<T>& a, const T& c) {
    UPoly<T> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    return r;
}

/// Multiplies by Y^k.
template <class T>
UPoly<T> shift(const UPoly<T>& a, std::size_t k, const T& zero) {
    UPoly<T> r(k, zero);
    r.insert(r.end(), a.begin(), a.end());
    return r;
}

template <class T>
bool equal(const UPoly<T>& a, const UPoly<T>& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        bool az = i >= a.size() || a[i].is_zero();
        bool bz = i >= b.size() || b[i].is_zero();
        if (az && bz) continue;
        if (az != bz || !(a[i] == b[i])) return false;
    }
    return true;
}

template <class T>
T eval(const UPoly<T>& a, const T& x, const T& zero) {
    T r = zero;
    for (std::size_t i = a.size(); i-- > 0;) r = r * x + a[i];
    return r;
}

/// Division of a monic-divisible polynomial by (X - root); returns the quotient.
template <class T>
UPoly<T> divide_linear(const UPoly<T>& f, const T& root, const T& zero) {
    if (f.size() < 2) return {};
    UPoly<T> q(f.size() - 1, zero);
    T carry = zero;
    for (std::size_t i = f.size() - 1; i-- > 0;) {
        carry = f[i + 1] + carry * root;
        q[i] = carry;
    }
    return q;
}

/// Power series inverse of a with invertible constant term, to precision n.
template <class T, class Inv>
UPoly<T> series_inverse(const UPoly<T>& a, std::size_t n, const T& zero, Inv inv_const) {
    UPoly<T> r(n, zero);
    if (n == 0) return r;
    T c0 = inv_const(a.at(0));
    r[0] = c0;
    for (std::size_t k = 1; k < n; ++k) {
        T s = zero;
        for (std::size_t j = 1; j <= k && j < a.size(); ++j) s = s + a[j] * r[k - j];
        r[k] = zero - s * c0;
    }
    return r;
}

template <class T>
std::string to_string(const UPoly<T>& a, const std::string& var = "Y") {
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string c = a[i].str();
        if (i == 0) s += c;
        else {
            s += "(" + c + ")*" + var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

} // namespace upoly
} // namespace skolem
