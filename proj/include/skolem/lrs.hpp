#pragma once

/**
 * @file lrs.hpp
 * @brief Linear recurrence sequences over a quotient ring.
 *
 * gamma_n = a_1 gamma_{n-1} + ... + a_d gamma_{n-d}. Internally a_d may be
 * zero (projections and subsequences can produce that); only problem
 * validation insists on a nonzero trailing coefficient.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/numtheory.hpp"
#include "skolem/ring.hpp"
#include "skolem/upoly.hpp"

namespace skolem {

class LRS {
public:
    LRS() = default;

    LRS(QuotientRing::Ptr ring, std::vector<RingElem> coefficients, std::vector<RingElem> initial)
        : ring_(std::move(ring)), a_(std::move(coefficients)), init_(std::move(initial)) {
        if (a_.empty()) throw InvalidInput("recurrence order must be positive");
        if (a_.size() != init_.size())
            throw InvalidInput("recurrence needs as many initial terms as coefficients");
        for (auto* v : {&a_, &init_})
            for (auto& x : *v)
                if (x.ring() != ring_) x = ring_->elem(x.poly().with_modulus(ring_->q()));
    }

    /// Parses coefficient and initial-term strings over the ring's variables.
    static LRS parse(const QuotientRing::Ptr& ring, const std::vector<std::string>& coefficients,
                     const std::vector<std::string>& initial) {
        std::vector<RingElem> a, g;
        for (const auto& s : coefficients) a.push_back(ring->parse_elem(s));
        for (const auto& s : initial) g.push_back(ring->parse_elem(s));
        return {ring, std::move(a), std::move(g)};
    }

    const QuotientRing::Ptr& ring() const { return ring_; }
    std::size_t order() const { return a_.size(); }
    const std::vector<RingElem>& coefficients() const { return a_; }
    const std::vector<RingElem>& initial() const { return init_; }

    /// The same recurrence read in another ring whose variables extend (a prefix of) ours.
    LRS map_to(const QuotientRing::Ptr& target) const {
        std::vector<RingElem> a, g;
        for (const auto& x : a_) a.push_back(target->elem(x.poly().with_modulus(target->q())));
        for (const auto& x : init_) g.push_back(target->elem(x.poly().with_modulus(target->q())));
        return {target, std::move(a), std::move(g)};
    }

    std::string str() const {
        std::string s = "gamma_n =";
        for (std::size_t i = 0; i < a_.size(); ++i)
            s += (i ? " + (" : " (") + a_[i].str() + ")*gamma_{n-" + std::to_string(i + 1) + "}";
        s += "; initial";
        for (const auto& g : init_) s += " " + g.str();
        return s;
    }

private:
    QuotientRing::Ptr ring_;
    std::vector<RingElem> a_;
    std::vector<RingElem> init_;
};

struct CharPoly {
    UPoly<RingElem> poly;      // f(Y) = Y^d - a_1 Y^(d-1) - ... - a_d
    UPoly<RingElem> reversed;  // phi(Y) = 1 - a_1 Y - ... - a_d Y^d
};

inline CharPoly char_poly(const LRS& L) {
    const auto& R = L.ring();
    const std::size_t d = L.order();
    CharPoly c;
    c.poly.assign(d + 1, R->zero());
    c.reversed.assign(d + 1, R->zero());
    c.poly[d] = R->one();
    c.reversed[0] = R->one();
    for (std::size_t i = 1; i <= d; ++i) {
        c.poly[d - i] = -L.coefficients()[i - 1];
        c.reversed[i] = -L.coefficients()[i - 1];
    }
    return c;
}

/// First `count` terms by direct iteration.
inline std::vector<RingElem> terms(const LRS& L, std::size_t count) {
    const std::size_t d = L.order();
    std::vector<RingElem> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        if (n < d) { out.push_back(L.initial()[n]); continue; }
        RingElem s = L.ring()->zero();
        for (std::size_t i = 0; i < d; ++i)
            if (!L.coefficients()[i].is_zero()) s += L.coefficients()[i] * out[n - 1 - i];
        out.push_back(std::move(s));
    }
    return out;
}

namespace detail {

/// Y^n mod f(Y) for the monic characteristic polynomial (coefficients of 1..Y^(d-1)).
inline std::vector<RingElem> power_mod_charpoly(const LRS& L, Integer n) {
    const auto& R = L.ring();
    const std::size_t d = L.order();
    auto mulmod_f = [&](const std::vector<RingElem>& x, const std::vector<RingElem>& y) {
        std::vector<RingElem> prod(2 * d - 1, R->zero());
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < d; ++j)
                if (!y[j].is_zero()) prod[i + j] += x[i] * y[j];
        }
        // Y^k = a_1 Y^(k-1) + ... + a_d Y^(k-d) for k >= d.
        for (std::size_t k = prod.size(); k-- > d;) {
            if (prod[k].is_zero()) continue;
            for (std::size_t i = 1; i <= d; ++i) prod[k - i] += prod[k] * L.coefficients()[i - 1];
        }
        prod.resize(d, R->zero());
        return prod;
    };
    std::vector<RingElem> result(d, R->zero()), base(d, R->zero());
    result[0] = R->one();
    if (d == 1) base[0] = L.coefficients()[0];
    else base[1] = R->one();
    while (n > 0) {
        if ((n & 1) != 0) result = mulmod_f(result, base);
        n >>= 1;
        if (n > 0) base = mulmod_f(base, base);
    }
    return result;
}

} // namespace detail

/// gamma_n; direct iteration below 64, otherwise Y^n mod f(Y) by binary powering.
inline RingElem term_at(const LRS& L, const Integer& n) {
    if (n < 0) throw InvalidInput("term index must be nonnegative");
    if (n < 64) {
        auto t = terms(L, static_cast<std::size_t>(n) + 1);
        return t.back();
    }
    auto c = detail::power_mod_charpoly(L, n);
    RingElem s = L.ring()->zero();
    for (std::size_t i = 0; i < L.order(); ++i)
        if (!c[i].is_zero()) s += c[i] * L.initial()[i];
    return s;
}

inline RingElem term_at(const LRS& L, u64 n) { return term_at(L, Integer(n)); }

/// h(Y) with g(Y) = h(Y) / phi(Y), deg h < d. The identity is rechecked up to degree 3d.
inline UPoly<RingElem> gf_numerator(const LRS& L) {
    const std::size_t d = L.order();
    const auto& R = L.ring();
    CharPoly c = char_poly(L);
    auto g = terms(L, 3 * d + 1);
    auto prod = upoly::mul(c.reversed, g, R->zero(), 3 * d + 1);
    for (std::size_t k = d; k < prod.size(); ++k)
        if (!prod[k].is_zero()) throw Error("internal", "generating function check failed");
    prod.resize(d, R->zero());
    return prod;
}

/// Characteristic polynomial det(Y I - M) by Berkowitz's division-free algorithm.
/// Returned lowest degree first.
inline UPoly<RingElem> berkowitz(const std::vector<std::vector<RingElem>>& M, const QuotientRing::Ptr& R) {
    const std::size_t n = M.size();
    // Coefficients highest degree first while building.
    std::vector<RingElem> vect{R->one(), -M[0][0]};
    for (std::size_t r = 1; r < n; ++r) {
        // Leading r x r block A, row R_ = M[r][0..r), column S = M[0..r)[r].
        std::vector<RingElem> col(r + 2, R->zero());
        col[0] = R->one();
        col[1] = -M[r][r];
        std::vector<RingElem> s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = M[i][r];
        for (std::size_t k = 2; k < r + 2; ++k) {
            RingElem dot = R->zero();
            for (std::size_t i = 0; i < r; ++i) dot += M[r][i] * s[i];
            col[k] = -dot;
            std::vector<RingElem> ns(r, R->zero());
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    if (!M[i][j].is_zero() && !s[j].is_zero()) ns[i] += M[i][j] * s[j];
            s = std::move(ns);
        }
        std::vector<RingElem> next(r + 2, R->zero());
        for (std::size_t i = 0; i < r + 2; ++i)
            for (std::size_t j = 0; j < vect.size() && j <= i; ++j)
                if (!col[i - j].is_zero() && !vect[j].is_zero()) next[i] += col[i - j] * vect[j];
        vect = std::move(next);
    }
    return {vect.rbegin(), vect.rend()};
}

/// The sequence (gamma_{m n + q})_n, using the characteristic polynomial of the m-th companion power.
inline LRS subsequence(const LRS& L, u64 m, u64 q) {
    if (m == 0 || q >= m) throw InvalidInput("subsequence needs m >= 1 and 0 <= q < m");
    const std::size_t d = L.order();
    const auto& R = L.ring();
    using Mat = std::vector<std::vector<RingElem>>;
    auto matmul = [&](const Mat& A, const Mat& B) {
        Mat C(d, std::vector<RingElem>(d, R->zero()));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                if (A[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < d; ++j)
                    if (!B[k][j].is_zero()) C[i][j] += A[i][k] * B[k][j];
            }
        return C;
    };
    // Companion matrix acting on state (gamma_{n+d-1}, ..., gamma_n).
    Mat comp(d, std::vector<RingElem>(d, R->zero()));
    for (std::size_t j = 0; j < d; ++j) comp[0][j] = L.coefficients()[j];
    for (std::size_t i = 1; i < d; ++i) comp[i][i - 1] = R->one();
    Mat pw(d, std::vector<RingElem>(d, R->zero()));
    for (std::size_t i = 0; i < d; ++i) pw[i][i] = R->one();
    Mat base = comp;
    for (u64 k = m; k; k >>= 1) {
        if (k & 1) pw = matmul(pw, base);
        if (k > 1) base = matmul(base, base);
    }
    auto chi = berkowitz(pw, R);  // monic, degree d
    std::vector<RingElem> a(d), init(d);
    for (std::size_t i = 1; i <= d; ++i) a[i - 1] = -chi[d - i];
    for (std::size_t i = 0; i < d; ++i) init[i] = term_at(L, Integer(m) * i + q);
    return {R, std::move(a), std::move(init)};
}

} // namespace skolem
