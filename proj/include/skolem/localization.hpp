#pragma once

/**
 * @file localization.hpp
 * @brief Localization S^-1 A at finitely many non-zero-divisors.
 *
 * A fraction stores its numerator and the exponent vector of its denominator
 * over the generators of S. Numerators and denominators are never cancelled
 * against each other; equality is decided by cross-multiplication, which is
 * sound because every generator is a non-zero-divisor.
 */

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/ring.hpp"

namespace skolem {

class MultiplicativeSet {
public:
    using Ptr = std::shared_ptr<const MultiplicativeSet>;

    /// Verifies every generator is a non-zero-divisor.
    static Ptr make(QuotientRing::Ptr ring, std::vector<RingElem> generators, const GroebnerOptions& opts = {}) {
        auto s = std::shared_ptr<MultiplicativeSet>(new MultiplicativeSet(std::move(ring)));
        for (auto& g : generators) {
            auto zd = is_zero_divisor(g, opts);
            if (zd.verdict == Verdict::True)
                throw InvalidInput("cannot localize at zero-divisor " + g.str());
            if (zd.verdict == Verdict::Unknown)
                throw ZeroDivisorUnknown("could not decide whether " + g.str() + " is a zero-divisor");
            s->generators_.push_back(g);
            s->inverses_.push_back(finite_inverse(g));
        }
        return s;
    }

    const QuotientRing::Ptr& ring() const { return ring_; }
    const std::vector<RingElem>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }

    std::optional<std::size_t> index_of(const RingElem& g) const {
        for (std::size_t i = 0; i < generators_.size(); ++i)
            if (generators_[i] == g) return i;
        return std::nullopt;
    }

    const std::optional<RingElem>& inverse(std::size_t i) const { return inverses_[i]; }

    RingElem product(const std::vector<std::uint32_t>& exps) const {
        RingElem r = ring_->one();
        for (std::size_t i = 0; i < exps.size(); ++i)
            if (exps[i]) r *= generators_[i].pow(static_cast<u64>(exps[i]));
        return r;
    }

private:
    explicit MultiplicativeSet(QuotientRing::Ptr ring) : ring_(std::move(ring)) {}

    QuotientRing::Ptr ring_;
    std::vector<RingElem> generators_;
    std::vector<std::optional<RingElem>> inverses_;
};

class Fraction {
public:
    Fraction() = default;

    Fraction(MultiplicativeSet::Ptr S, RingElem num, std::vector<std::uint32_t> den = {})
        : S_(std::move(S)), num_(std::move(num)), den_(std::move(den)) {
        den_.resize(S_->size(), 0);
        normalize();
    }

    static Fraction of(const MultiplicativeSet::Ptr& S, i64 c) { return {S, S->ring()->elem(c)}; }

    /// 1 / g_i^k for a generator of S.
    static Fraction inverse_of_generator(const MultiplicativeSet::Ptr& S, std::size_t i, std::uint32_t k = 1) {
        std::vector<std::uint32_t> den(S->size(), 0);
        den.at(i) = k;
        return {S, S->ring()->one(), std::move(den)};
    }

    const MultiplicativeSet::Ptr& set() const { return S_; }
    const RingElem& numerator() const { return num_; }
    const std::vector<std::uint32_t>& denominator_exponents() const { return den_; }
    RingElem denominator() const { return S_->product(den_); }

    bool is_zero() const { return num_.is_zero(); }

    bool has_trivial_denominator() const {
        return std::all_of(den_.begin(), den_.end(), [](auto x) { return x == 0; });
    }

    Fraction operator+(const Fraction& o) const {
        auto [a, b, d] = align(o);
        return {S_, a + b, std::move(d)};
    }
    Fraction operator-(const Fraction& o) const {
        auto [a, b, d] = align(o);
        return {S_, a - b, std::move(d)};
    }
    Fraction operator-() const { return {S_, -num_, den_}; }
    Fraction operator*(const Fraction& o) const {
        std::vector<std::uint32_t> d(den_.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = den_[i] + o.den_[i];
        return {S_, num_ * o.num_, std::move(d)};
    }
    Fraction operator*(const RingElem& r) const { return {S_, num_ * r, den_}; }
    Fraction& operator+=(const Fraction& o) { return *this = *this + o; }
    Fraction& operator-=(const Fraction& o) { return *this = *this - o; }
    Fraction& operator*=(const Fraction& o) { return *this = *this * o; }

    /// Cross-multiplied equality.
    bool operator==(const Fraction& o) const {
        auto [a, b, d] = align(o);
        return a == b;
    }

    Fraction pow(u64 n) const {
        Fraction r = of(S_, 1), b = *this;
        while (n) {
            if (n & 1) r *= b;
            n >>= 1;
            if (n) b *= b;
        }
        return r;
    }

    std::string str() const {
        if (has_trivial_denominator()) return num_.str();
        std::string s = "(" + num_.str() + ")/(";
        bool first = true;
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (!den_[i]) continue;
            if (!first) s += "*";
            first = false;
            s += "(" + S_->generators()[i].str() + ")";
            if (den_[i] > 1) s += "^" + std::to_string(den_[i]);
        }
        return s + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            std::fill(den_.begin(), den_.end(), 0);
            return;
        }
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (den_[i] && S_->inverse(i)) {
                num_ *= S_->inverse(i)->pow(static_cast<u64>(den_[i]));
                den_[i] = 0;
            }
        }
    }

    /// Numerators over the common denominator max(den, o.den).
    std::tuple<RingElem, RingElem, std::vector<std::uint32_t>> align(const Fraction& o) const {
        std::vector<std::uint32_t> d(den_.size()), ea(den_.size()), eb(den_.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] = std::max(den_[i], o.den_[i]);
            ea[i] = d[i] - den_[i];
            eb[i] = d[i] - o.den_[i];
        }
        return {num_ * S_->product(ea), o.num_ * S_->product(eb), d};
    }

    MultiplicativeSet::Ptr S_;
    RingElem num_;
    std::vector<std::uint32_t> den_;
};

} // namespace skolem
