#pragma once

/**
 * @file ring.hpp
 * @brief Finitely presented rings Z/p^e[x_1..x_N]/I and their elements.
 *
 * Element equality is normal-form equality against a strong Gröbner basis.
 * Rings are immutable and shared through std::shared_ptr; elements keep a
 * handle to their ring.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/groebner.hpp"
#include "skolem/numtheory.hpp"
#include "skolem/poly.hpp"

namespace skolem {

/// Characteristic p^e of a coefficient ring.
class Modulus {
public:
    Modulus(u64 prime, unsigned exponent) : prime_(prime), exponent_(exponent) {
        if (exponent == 0) throw InvalidInput("modulus exponent must be positive");
        if (!is_prime(prime)) throw InvalidInput(std::to_string(prime) + " is not prime");
        Integer v = ipow(Integer(prime), exponent);
        if (v >= (Integer(1) << 62)) throw InvalidInput("modulus exceeds 2^62");
        value_ = static_cast<u64>(v);
    }

    /// Rejects values that are not prime powers; composite characteristics must be CRT-split first.
    static Modulus of(u64 value) {
        auto pp = as_prime_power(value);
        if (!pp) throw InvalidInput("modulus " + std::to_string(value) + " is not a prime power");
        return Modulus(pp->first, pp->second);
    }

    u64 value() const { return value_; }
    u64 prime() const { return prime_; }
    unsigned exponent() const { return exponent_; }
    bool operator==(const Modulus&) const = default;

private:
    u64 prime_;
    unsigned exponent_;
    u64 value_ = 0;
};

/// Ideal with its (eagerly computed, then immutable) strong Gröbner basis.
class Ideal {
public:
    Ideal(std::vector<MultiPoly> generators, const Modulus& m, const GroebnerOptions& opts = {})
        : generators_(std::move(generators)), groebner_(generators_, m.prime(), m.exponent(), opts) {}

    const std::vector<MultiPoly>& generators() const { return generators_; }
    const GroebnerBasis& groebner() const { return groebner_; }
    MultiPoly normal_form(const MultiPoly& f) const { return groebner_.reduce(f); }

private:
    std::vector<MultiPoly> generators_;
    GroebnerBasis groebner_;
};

class RingElem;

/// Size data of a finite quotient: standard monomials with their coefficient ranges.
struct FiniteInfo {
    std::vector<std::pair<Monomial, u64>> slots;  // monomial, number of coefficient values
    Integer size = 1;
};

class QuotientRing : public std::enable_shared_from_this<QuotientRing> {
public:
    using Ptr = std::shared_ptr<const QuotientRing>;

    static Ptr make(const Modulus& m, std::vector<std::string> vars, std::vector<MultiPoly> ideal_gens,
                    const GroebnerOptions& opts = {}) {
        if (vars.size() > kMaxVars) throw InvalidInput("too many variables");
        for (auto& g : ideal_gens) g = g.with_modulus(m.value());
        return Ptr(new QuotientRing(m, std::move(vars), Ideal(std::move(ideal_gens), m, opts)));
    }

    /// Parses ideal generators in the shared polynomial syntax.
    static Ptr parse(u64 modulus, std::vector<std::string> vars, const std::vector<std::string>& gens) {
        Modulus m = Modulus::of(modulus);
        std::vector<MultiPoly> polys;
        for (const auto& g : gens) polys.push_back(parse_poly(g, vars, m.value()));
        return make(m, std::move(vars), std::move(polys));
    }

    const Modulus& modulus() const { return modulus_; }
    u64 q() const { return modulus_.value(); }
    u64 prime() const { return modulus_.prime(); }
    unsigned exponent() const { return modulus_.exponent(); }
    const std::vector<std::string>& variables() const { return vars_; }
    const Ideal& ideal() const { return ideal_; }

    MultiPoly normal_form(const MultiPoly& f) const {
        if (f.modulus() != q()) throw InvalidInput("modulus mismatch in normal form");
        return ideal_.normal_form(f);
    }

    RingElem elem(const MultiPoly& f) const;
    RingElem elem(i64 c) const;
    RingElem parse_elem(const std::string& text, std::size_t line = 1, std::size_t col = 1) const;
    RingElem var(std::size_t i) const;
    RingElem zero() const;
    RingElem one() const;

    /// Present iff the quotient has finitely many elements.
    const std::optional<FiniteInfo>& finite_info() const { return finite_; }
    bool is_finite() const { return finite_.has_value(); }

    /// All elements, when the ring is finite and at most `limit` large.
    std::vector<RingElem> enumerate(std::size_t limit = 65536) const;

    /// Adds generators to the ideal (possibly with new variables appended).
    Ptr extend(std::vector<std::string> extra_vars, const std::vector<MultiPoly>& extra_gens) const {
        auto vars = vars_;
        for (auto& v : extra_vars) vars.push_back(std::move(v));
        auto gens = ideal_.groebner().basis();
        for (const auto& g : extra_gens) gens.push_back(g);
        return make(modulus_, std::move(vars), std::move(gens));
    }

    /// The ring reduced modulo a divisor p^k of its characteristic.
    Ptr reduce_modulus(unsigned k) const {
        Modulus m(prime(), k);
        std::vector<MultiPoly> gens;
        for (const auto& g : ideal_.groebner().basis()) gens.push_back(g.with_modulus(m.value()));
        return make(m, vars_, std::move(gens));
    }

    std::string describe() const {
        std::string s = "Z/" + std::to_string(q());
        if (!vars_.empty()) {
            s += "[";
            for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
            s += "]";
        }
        const auto& b = ideal_.groebner().basis();
        if (!b.empty()) {
            s += "/<";
            for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ", " : "") + to_string(b[i], vars_);
            s += ">";
        }
        return s;
    }

private:
    QuotientRing(const Modulus& m, std::vector<std::string> vars, Ideal ideal)
        : modulus_(m), vars_(std::move(vars)), ideal_(std::move(ideal)) {
        compute_finite_info();
    }

    void compute_finite_info();

    Modulus modulus_;
    std::vector<std::string> vars_;
    Ideal ideal_;
    std::optional<FiniteInfo> finite_;
};

/// An element of a QuotientRing, always stored in normal form.
class RingElem {
public:
    RingElem() = default;
    RingElem(QuotientRing::Ptr ring, MultiPoly poly) : ring_(std::move(ring)), poly_(std::move(poly)) {}

    const QuotientRing::Ptr& ring() const { return ring_; }
    const MultiPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_one() const { return poly_ == MultiPoly::constant(ring_->q(), 1); }

    RingElem operator+(const RingElem& o) const { return {ring_, ring_->normal_form(poly_ + o.poly_)}; }
    RingElem operator-(const RingElem& o) const { return {ring_, ring_->normal_form(poly_ - o.poly_)}; }
    RingElem operator-() const { return {ring_, ring_->normal_form(-poly_)}; }
    RingElem operator*(const RingElem& o) const { return {ring_, ring_->normal_form(poly_ * o.poly_)}; }
    RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
    RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }

    RingElem scale(i64 c) const {
        return {ring_, ring_->normal_form(poly_.scale(reduce_signed(c, ring_->q())))};
    }
    RingElem scale_u(u64 c) const { return {ring_, ring_->normal_form(poly_.scale(c % ring_->q()))}; }

    bool operator==(const RingElem& o) const { return poly_ == o.poly_; }

    RingElem pow(u64 n) const {
        RingElem r = ring_->one(), b = *this;
        while (n) {
            if (n & 1) r *= b;
            n >>= 1;
            if (n) b *= b;
        }
        return r;
    }

    RingElem pow(const Integer& n) const {
        RingElem r = ring_->one(), b = *this;
        Integer k = n;
        while (k > 0) {
            if ((k & 1) != 0) r *= b;
            k >>= 1;
            if (k > 0) b *= b;
        }
        return r;
    }

    std::string str() const { return to_string(poly_, ring_->variables()); }

private:
    QuotientRing::Ptr ring_;
    MultiPoly poly_;
};

struct RingElemHash {
    std::size_t operator()(const RingElem& a) const noexcept { return a.poly().hash(); }
};

inline RingElem QuotientRing::elem(const MultiPoly& f) const {
    return {shared_from_this(), normal_form(f.with_modulus(q()))};
}
inline RingElem QuotientRing::elem(i64 c) const { return elem(MultiPoly::constant(q(), c)); }
inline RingElem QuotientRing::parse_elem(const std::string& text, std::size_t line, std::size_t col) const {
    return elem(parse_poly(text, vars_, q(), line, col));
}
inline RingElem QuotientRing::var(std::size_t i) const { return elem(MultiPoly::monomial(q(), Monomial::var(i))); }
inline RingElem QuotientRing::zero() const { return {shared_from_this(), MultiPoly(q())}; }
inline RingElem QuotientRing::one() const { return elem(1); }

inline void QuotientRing::compute_finite_info() {
    const auto& gb = ideal_.groebner();
    const std::size_t n = vars_.size();
    // Finite iff every variable has a pure-power leading monomial with unit coefficient.
    std::vector<std::uint32_t> bound(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& g : gb.basis()) {
            const auto& lt = g.leading();
            if (gb.valuation(lt.coeff) != 0) continue;
            bool pure = lt.mono.e[i] > 0;
            for (std::size_t j = 0; j < kMaxVars && pure; ++j)
                if (j != i && lt.mono.e[j] != 0) pure = false;
            if (pure && (bound[i] == 0 || lt.mono.e[i] < bound[i])) bound[i] = lt.mono.e[i];
        }
        if (bound[i] == 0) return;
    }
    FiniteInfo info;
    Monomial m;
    // Walk the box of monomials below the pure-power bounds.
    std::uint64_t boxes = 1;
    for (std::size_t i = 0; i < n; ++i) {
        boxes *= bound[i];
        if (boxes > 50000000ULL) return;
    }
    for (std::uint64_t idx = 0; idx < boxes; ++idx) {
        std::uint64_t r = idx;
        for (std::size_t i = 0; i < n; ++i) {
            m.e[i] = static_cast<std::uint32_t>(r % bound[i]);
            r /= bound[i];
        }
        unsigned k = modulus_.exponent();
        for (std::size_t j = 0; j < gb.basis().size(); ++j) {
            const auto& lt = gb.basis()[j].leading();
            if (lt.mono.divides(m)) k = std::min(k, gb.valuation(lt.coeff));
        }
        if (k > 0) {
            u64 range = ipow_u64(modulus_.prime(), k);
            info.slots.push_back({m, range});
            info.size *= range;
        }
    }
    finite_ = std::move(info);
}

inline std::vector<RingElem> QuotientRing::enumerate(std::size_t limit) const {
    if (!finite_) throw InvalidInput("ring is not finite");
    if (finite_->size > limit) throw ResourceExhausted("ring too large to enumerate");
    std::vector<RingElem> out;
    const auto& slots = finite_->slots;
    auto total = static_cast<std::size_t>(finite_->size);
    out.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t r = idx;
        std::vector<Term> ts;
        for (const auto& [mono, range] : slots) {
            u64 c = r % range;
            r /= range;
            if (c) ts.push_back({mono, c});
        }
        // Coefficients are already reduced, so this is the normal form.
        out.emplace_back(shared_from_this(), MultiPoly::from_terms(q(), std::move(ts)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Zero-divisors and nilpotency
// ---------------------------------------------------------------------------

enum class Verdict { True, False, Unknown };

struct ZeroDivisorResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<RingElem> witness;
};

/// Cycle data of k -> a^k in a finite ring: a^mu = a^(mu + period).
struct PowerCycle {
    u64 preperiod = 0;
    u64 period = 0;
};

inline PowerCycle power_cycle(const RingElem& a, u64 max_steps = 50000000) {
    std::unordered_map<RingElem, u64, RingElemHash> seen;
    RingElem x = a.ring()->one();
    for (u64 k = 0; k < max_steps; ++k) {
        auto [it, inserted] = seen.emplace(x, k);
        if (!inserted) return {it->second, k - it->second};
        x *= a;
    }
    throw ResourceExhausted("power cycle not found within step budget");
}

/// Decides whether a is a zero-divisor. TRUE verdicts carry a verified witness.
///
/// Finite rings use the power cycle of a: a is a unit iff the cycle is pure;
/// otherwise x = a^(mu-1) (a^T - 1) is a nonzero annihilator. Infinite rings
/// compute the ideal quotient (I : a) with a module Gröbner basis.
inline ZeroDivisorResult is_zero_divisor(const RingElem& a, const GroebnerOptions& opts = {}) {
    const auto& R = a.ring();
    ZeroDivisorResult res;
    if (a.is_zero()) {
        // 0 is a zero-divisor of every nonzero ring.
        if (R->one().is_zero()) { res.verdict = Verdict::False; return res; }
        res.verdict = Verdict::True;
        res.witness = R->one();
        return res;
    }
    if (R->is_finite()) {
        PowerCycle c = power_cycle(a);
        if (c.preperiod == 0) { res.verdict = Verdict::False; return res; }
        RingElem x = a.pow(c.preperiod - 1) * (a.pow(c.period) - R->one());
        res.verdict = Verdict::True;
        res.witness = x;
    } else {
        std::vector<MultiPoly> quotient;
        try {
            quotient = ideal_quotient(R->ideal().groebner().basis(), a.poly(), R->prime(), R->exponent(), opts);
        } catch (const ResourceExhausted&) {
            return res;
        }
        for (const auto& qgen : quotient) {
            RingElem x = R->elem(qgen);
            if (!x.is_zero()) {
                res.verdict = Verdict::True;
                res.witness = x;
                break;
            }
        }
        if (!res.witness) { res.verdict = Verdict::False; return res; }
    }
    if (!(a * *res.witness).is_zero() || res.witness->is_zero())
        throw Error("internal", "zero-divisor witness failed verification");
    return res;
}

inline u64 default_nilpotency_cap(const QuotientRing& R) {
    return static_cast<u64>(R.exponent()) * (1 + R.ideal().groebner().degree_bound()) * 64;
}

/// Smallest l <= cap with a^l = 0, found by repeated squaring then bisection.
inline std::optional<u64> nilpotency_index(const RingElem& a, u64 cap) {
    if (cap == 0) throw InvalidInput("nilpotency cap must be positive");
    if (a.is_zero()) return 1;
    // Find k with a^(2^k) = 0.
    std::vector<RingElem> squares{a};  // a^(2^i)
    u64 pw = 1;
    while (!squares.back().is_zero()) {
        if (pw >= cap) return std::nullopt;
        squares.push_back(squares.back() * squares.back());
        pw *= 2;
    }
    // a^pw = 0 and a^(pw/2) != 0; bisect on (pw/2, pw] using binary composition.
    u64 lo = pw / 2, hi = pw;  // a^lo != 0, a^hi = 0
    auto power = [&](u64 n) {
        RingElem r = a.ring()->one();
        for (std::size_t i = 0; n; ++i, n >>= 1)
            if (n & 1) r *= squares[i];
        return r;
    };
    while (hi - lo > 1) {
        u64 mid = lo + (hi - lo) / 2;
        if (power(mid).is_zero()) hi = mid; else lo = mid;
    }
    if (hi > cap) return std::nullopt;
    return hi;
}

/// Inverse of a unit in a finite ring (a^(T-1) for the pure power cycle of length T).
inline std::optional<RingElem> finite_inverse(const RingElem& a) {
    if (!a.ring()->is_finite()) return std::nullopt;
    PowerCycle c = power_cycle(a);
    if (c.preperiod != 0) return std::nullopt;
    return a.pow(c.period - 1);
}

} // namespace skolem
