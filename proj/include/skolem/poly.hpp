#pragma once

/**
 * @file poly.hpp
 * @brief Sparse multivariate polynomials over Z/mZ with degrevlex order.
 *
 * Monomials live in a fixed-width exponent array so that the adjoined root
 * variables and module components can be added without reallocating. The
 * optional component index turns a polynomial into an element of a free
 * module R^k under a position-over-term order.
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/numtheory.hpp"

namespace skolem {

inline constexpr std::size_t kMaxVars = 16;

struct Monomial {
    std::array<std::uint32_t, kMaxVars> e{};
    std::uint32_t comp = 0;

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (auto x : e) d += x;
        return d;
    }

    bool is_one() const { return comp == 0 && degree() == 0; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = e[i] + o.e[i];
        r.comp = comp + o.comp;
        return r;
    }

    /// True iff this divides o (same component required).
    bool divides(const Monomial& o) const {
        if (comp != o.comp) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    /// o / this; requires divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = o.e[i] - e[i];
        r.comp = 0;
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        r.comp = a.comp;
        return r;
    }

    static Monomial var(std::size_t i, std::uint32_t power = 1) {
        Monomial m;
        m.e.at(i) = power;
        return m;
    }

    bool operator==(const Monomial&) const = default;
};

/// Position-over-term, then degree, then reverse lexicographic (last variable decides).
inline int compare(const Monomial& a, const Monomial& b) {
    if (a.comp != b.comp) return a.comp > b.comp ? 1 : -1;
    auto da = a.degree(), db = b.degree();
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = m.comp * 0x9e3779b97f4a7c15ULL;
        for (auto x : m.e) h = (h ^ x) * 0x100000001b3ULL;
        return h;
    }
};

struct Term {
    Monomial mono;
    u64 coeff;
    bool operator==(const Term&) const = default;
};

/// Polynomial with coefficients in [0, modulus), terms sorted strictly decreasing.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(u64 modulus) : modulus_(modulus) {}

    static MultiPoly constant(u64 modulus, i64 c) {
        MultiPoly p(modulus);
        u64 v = reduce_signed(c, modulus);
        if (v) p.terms_.push_back({Monomial{}, v});
        return p;
    }

    static MultiPoly monomial(u64 modulus, const Monomial& m, u64 c = 1) {
        MultiPoly p(modulus);
        c %= modulus;
        if (c) p.terms_.push_back({m, c});
        return p;
    }

    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    static MultiPoly from_terms(u64 modulus, std::vector<Term> ts) {
        MultiPoly p(modulus);
        std::sort(ts.begin(), ts.end(),
                  [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
        for (auto& t : ts) {
            t.coeff %= modulus;
            if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
                p.terms_.back().coeff = addmod(p.terms_.back().coeff, t.coeff, modulus);
                if (p.terms_.back().coeff == 0) p.terms_.pop_back();
            } else if (t.coeff) {
                p.terms_.push_back(t);
            }
        }
        return p;
    }

    u64 modulus() const { return modulus_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Term& leading() const { return terms_.front(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    u64 constant_value() const {
        if (terms_.empty()) return 0;
        const auto& t = terms_.back();
        return t.mono.is_one() ? t.coeff : 0;
    }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.mono.degree());
        return d;
    }

    bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

    MultiPoly operator-() const {
        MultiPoly r(modulus_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.mono, modulus_ - t.coeff});
        return r;
    }

    MultiPoly operator+(const MultiPoly& o) const { return combine(o, 1); }
    MultiPoly operator-(const MultiPoly& o) const { return combine(o, modulus_ - 1); }

    /// this + c * m * o, the workhorse of reduction.
    MultiPoly add_scaled(const MultiPoly& o, u64 c, const Monomial& m) const {
        MultiPoly r(modulus_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        c %= modulus_;
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size()) { r.terms_.push_back(terms_[i++]); continue; }
            Monomial om = o.terms_[j].mono * m;
            u64 oc = mulmod(o.terms_[j].coeff, c, modulus_);
            if (i == terms_.size()) {
                if (oc) r.terms_.push_back({om, oc});
                ++j;
                continue;
            }
            int cmp = compare(terms_[i].mono, om);
            if (cmp > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp < 0) {
                if (oc) r.terms_.push_back({om, oc});
                ++j;
            } else {
                u64 s = addmod(terms_[i].coeff, oc, modulus_);
                if (s) r.terms_.push_back({om, s});
                ++i; ++j;
            }
        }
        return r;
    }

    MultiPoly scale(u64 c, const Monomial& m = Monomial{}) const {
        MultiPoly r(modulus_);
        c %= modulus_;
        for (const auto& t : terms_) {
            u64 v = mulmod(t.coeff, c, modulus_);
            if (v) r.terms_.push_back({t.mono * m, v});
        }
        return r;
    }

    MultiPoly operator*(const MultiPoly& o) const {
        const MultiPoly& small = terms_.size() <= o.terms_.size() ? *this : o;
        const MultiPoly& big = terms_.size() <= o.terms_.size() ? o : *this;
        if (small.terms_.empty()) return MultiPoly(modulus_);
        if (small.terms_.size() <= 8) {
            MultiPoly r(modulus_);
            for (const auto& t : small.terms_) r = r.add_scaled(big, t.coeff, t.mono);
            return r;
        }
        std::unordered_map<Monomial, u64, MonomialHash> acc;
        acc.reserve(small.size() * big.size());
        for (const auto& a : small.terms_)
            for (const auto& b : big.terms_) {
                u64& slot = acc[a.mono * b.mono];
                slot = addmod(slot, mulmod(a.coeff, b.coeff, modulus_), modulus_);
            }
        std::vector<Term> ts;
        ts.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c) ts.push_back({m, c});
        return from_terms(modulus_, std::move(ts));
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    /// Reduces every coefficient modulo a divisor of the current modulus.
    MultiPoly with_modulus(u64 m) const {
        std::vector<Term> ts;
        for (const auto& t : terms_) ts.push_back({t.mono, t.coeff % m});
        return from_terms(m, std::move(ts));
    }

    /// Restricts to terms of one module component, dropping the component tag.
    MultiPoly component(std::uint32_t c) const {
        MultiPoly r(modulus_);
        for (const auto& t : terms_)
            if (t.mono.comp == c) {
                Monomial m = t.mono;
                m.comp = 0;
                r.terms_.push_back({m, t.coeff});
            }
        return r;
    }

    MultiPoly shifted_to_component(std::uint32_t c) const {
        MultiPoly r(modulus_);
        for (auto t : terms_) {
            t.mono.comp = c;
            r.terms_.push_back(t);
        }
        return r;
    }

    std::size_t hash() const {
        std::size_t h = 1469598103934665603ULL;
        MonomialHash mh;
        for (const auto& t : terms_) h = (h ^ mh(t.mono) ^ (t.coeff * 0x9e3779b97f4a7c15ULL)) * 1099511628211ULL;
        return h;
    }

private:
    MultiPoly combine(const MultiPoly& o, u64 c) const { return add_scaled(o, c, Monomial{}); }

    u64 modulus_ = 1;
    std::vector<Term> terms_;
};

struct MultiPolyHash {
    std::size_t operator()(const MultiPoly& p) const noexcept { return p.hash(); }
};

/// Canonical text form, e.g. `3*x^2*y + x + 2`; component-tagged terms print as `[c]`.
inline std::string to_string(const MultiPoly& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        bool wrote = false;
        if (t.coeff != 1 || t.mono.degree() == 0) {
            os << t.coeff;
            wrote = true;
        }
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (t.mono.e[i] == 0) continue;
            if (wrote) os << "*";
            os << (i < vars.size() ? vars[i] : "v" + std::to_string(i));
            if (t.mono.e[i] > 1) os << "^" << t.mono.e[i];
            wrote = true;
        }
        if (t.mono.comp) os << "*[" << t.mono.comp << "]";
    }
    return os.str();
}

/// Recursive-descent parser for the shared polynomial syntax.
///
/// poly   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := (NUMBER | IDENT | '(' poly ')') ['^' NUMBER]
class PolyParser {
public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars, u64 modulus,
               std::size_t line = 1, std::size_t column = 1)
        : text_(text), vars_(vars), modulus_(modulus), line_(line), col0_(column) {}

    MultiPoly parse() {
        MultiPoly p = poly();
        skip_ws();
        if (pos_ < text_.size()) fail({"'+'", "'-'", "'*'", "end of expression"}, "unexpected character");
        return p;
    }

private:
    MultiPoly poly() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') { neg = peek() == '-'; ++pos_; }
        MultiPoly acc = term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            MultiPoly t = term();
            acc = c == '+' ? acc + t : acc - t;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') {
                if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '(')
                    fail({"'*'"}, "implicit multiplication is not allowed");
                break;
            }
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    MultiPoly factor() {
        skip_ws();
        MultiPoly base(modulus_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = number();
            base = MultiPoly::constant(modulus_, static_cast<i64>(reduce_integer(v, modulus_)));
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) {
                pos_ = start;
                fail(vars_, "unknown variable '" + name + "'");
            }
            base = MultiPoly::monomial(modulus_, Monomial::var(static_cast<std::size_t>(it - vars_.begin())));
        } else if (c == '(') {
            ++pos_;
            base = poly();
            skip_ws();
            if (peek() != ')') fail({"')'"}, "unbalanced parenthesis");
            ++pos_;
        } else {
            fail({"number", "variable", "'('"}, "expected a factor");
        }
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail({"number"}, "expected exponent");
            Integer e = number();
            if (e > 1000000) fail({}, "exponent too large");
            MultiPoly r = MultiPoly::constant(modulus_, 1);
            MultiPoly b = base;
            auto n = static_cast<unsigned long>(e);
            while (n) {
                if (n & 1) r = r * b;
                n >>= 1;
                if (n) b = b * b;
            }
            base = r;
        }
        return base;
    }

    Integer number() {
        Integer v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        throw ParseError(line_, col0_ + pos_, std::move(expected), msg);
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    u64 modulus_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col0_;
};

inline MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars, u64 modulus,
                            std::size_t line = 1, std::size_t column = 1) {
    return PolyParser(text, vars, modulus, line, column).parse();
}

} // namespace skolem
