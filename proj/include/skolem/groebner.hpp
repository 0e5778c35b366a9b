#pragma once

/**
 * @file groebner.hpp
 * @brief Strong Gröbner bases over the chain ring Z/p^e.
 *
 * Every coefficient of Z/p^e is a unit times p^k, so divisibility of leading
 * coefficients is decided by p-adic valuation alone. Completion therefore
 * needs S-polynomials (scaled to the larger valuation) and annihilator
 * polynomials p^(e-k) f; gcd-polynomials are always redundant here.
 *
 * The same engine handles submodules of R^k (monomials carry a component
 * tag) which gives ideal quotients and intersections without elimination.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/numtheory.hpp"
#include "skolem/poly.hpp"

namespace skolem {

struct GroebnerOptions {
    std::size_t max_steps = 200000;
    std::size_t max_basis = 4000;
};

class GroebnerBasis {
public:
    GroebnerBasis() = default;

    /// Computes the reduced strong basis of the ideal (or module) generated by gens.
    GroebnerBasis(const std::vector<MultiPoly>& gens, u64 p, unsigned e,
                  const GroebnerOptions& opts = {})
        : p_(p), e_(e), q_(ipow_u64(p, e)) {
        complete(gens, opts);
    }

    u64 prime() const { return p_; }
    unsigned exponent() const { return e_; }
    u64 modulus() const { return q_; }
    const std::vector<MultiPoly>& basis() const { return basis_; }
    bool empty() const { return basis_.empty(); }

    unsigned valuation(u64 c) const {
        c %= q_;
        if (c == 0) return e_;
        unsigned v = 0;
        while (c % p_ == 0) { c /= p_; ++v; }
        return v;
    }

    /// Canonical remainder: zero iff f lies in the ideal.
    MultiPoly reduce(const MultiPoly& f) const {
        if (basis_.empty()) return f;
        std::vector<Term> out;
        MultiPoly rem = f;
        while (!rem.is_zero()) {
            const Term t = rem.leading();
            const MultiPoly* best = nullptr;
            unsigned best_k = e_ + 1;
            for (std::size_t i = 0; i < basis_.size(); ++i) {
                if (lead_val_[i] < best_k && basis_[i].leading().mono.divides(t.mono)) {
                    best = &basis_[i];
                    best_k = lead_val_[i];
                    if (best_k == 0) break;
                }
            }
            if (best == nullptr) {
                out.push_back(t);
                rem = drop_leading(rem);
                continue;
            }
            Monomial m = best->leading().mono.quotient_of(t.mono);
            u64 pk = ipow_u64(p_, best_k);
            u64 quo = t.coeff / pk;
            u64 r = t.coeff % pk;
            if (quo) rem = rem.add_scaled(*best, q_ - quo % q_, m);
            if (r != 0) {
                out.push_back({t.mono, r});
                rem = drop_leading(rem);
            }
        }
        return MultiPoly::from_terms(q_, std::move(out));
    }

    bool contains(const MultiPoly& f) const { return reduce(f).is_zero(); }

    /// Largest total degree among basis elements.
    std::uint64_t degree_bound() const {
        std::uint64_t d = 0;
        for (const auto& g : basis_) d = std::max(d, g.total_degree());
        return d;
    }

    /// Normalizes leading coefficient to a power of p.
    MultiPoly normalize(const MultiPoly& f) const {
        if (f.is_zero()) return f;
        u64 lc = f.leading().coeff;
        unsigned k = valuation(lc);
        u64 unit = lc / ipow_u64(p_, k);
        auto inv = inv_mod(unit % q_, q_);
        return f.scale(*inv);
    }

private:
    static MultiPoly drop_leading(const MultiPoly& f) {
        std::vector<Term> ts(f.terms().begin() + 1, f.terms().end());
        return MultiPoly::from_terms(f.modulus(), std::move(ts));
    }

    MultiPoly spoly(const MultiPoly& f, const MultiPoly& g) const {
        const auto& lf = f.leading();
        const auto& lg = g.leading();
        Monomial l = Monomial::lcm(lf.mono, lg.mono);
        unsigned a = valuation(lf.coeff), b = valuation(lg.coeff);
        unsigned c = std::max(a, b);
        MultiPoly sf = f.scale(ipow_u64(p_, c - a), lf.mono.quotient_of(l));
        return sf.add_scaled(g, q_ - ipow_u64(p_, c - b) % q_, lg.mono.quotient_of(l));
    }

    void refresh_vals() {
        lead_val_.clear();
        for (const auto& g : basis_) lead_val_.push_back(valuation(g.leading().coeff));
    }

    void complete(const std::vector<MultiPoly>& gens, const GroebnerOptions& opts) {
        std::deque<MultiPoly> todo;
        for (const auto& g : gens)
            if (!g.is_zero()) todo.push_back(g.with_modulus(q_));
        std::size_t steps = 0;
        while (!todo.empty()) {
            if (++steps > opts.max_steps)
                throw ResourceExhausted("groebner basis step budget exceeded");
            MultiPoly h = reduce(todo.front());
            todo.pop_front();
            if (h.is_zero()) continue;
            h = normalize(h);
            for (const auto& g : basis_)
                if (g.leading().mono.comp == h.leading().mono.comp) todo.push_back(spoly(h, g));
            unsigned k = valuation(h.leading().coeff);
            if (k > 0) todo.push_back(h.scale(ipow_u64(p_, e_ - k)));
            basis_.push_back(std::move(h));
            refresh_vals();
            if (basis_.size() > opts.max_basis)
                throw ResourceExhausted("groebner basis size budget exceeded");
        }
        minimize();
    }

    void minimize() {
        std::vector<MultiPoly> kept;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto& li = basis_[i].leading();
            bool redundant = false;
            for (std::size_t j = 0; j < basis_.size() && !redundant; ++j) {
                if (i == j) continue;
                const auto& lj = basis_[j].leading();
                if (!lj.mono.divides(li.mono)) continue;
                unsigned vi = valuation(li.coeff), vj = valuation(lj.coeff);
                if (vj < vi || (vj == vi && (lj.mono != li.mono || j < i))) redundant = true;
            }
            if (!redundant) kept.push_back(basis_[i]);
        }
        std::sort(kept.begin(), kept.end(), [](const MultiPoly& a, const MultiPoly& b) {
            int c = compare(a.leading().mono, b.leading().mono);
            return c != 0 ? c > 0 : a.leading().coeff < b.leading().coeff;
        });
        basis_ = kept;
        refresh_vals();
        // Tail reduction keeps leading terms, so the basis property is preserved.
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Term lt = basis_[i].leading();
            MultiPoly tail = drop_leading(basis_[i]);
            GroebnerBasis others = *this;
            others.basis_.erase(others.basis_.begin() + static_cast<std::ptrdiff_t>(i));
            others.refresh_vals();
            MultiPoly red = others.reduce(tail);
            std::vector<Term> ts = red.terms();
            ts.push_back(lt);
            basis_[i] = MultiPoly::from_terms(q_, std::move(ts));
        }
        refresh_vals();
    }

    u64 p_ = 2;
    unsigned e_ = 1;
    u64 q_ = 2;
    std::vector<MultiPoly> basis_;
    std::vector<unsigned> lead_val_;
};

/// Generators of the ideal quotient (I : a) = { q : q a in I }.
///
/// Uses the submodule of R^2 generated by (g, 0) for g in I and (a, 1);
/// under position-over-term its basis elements living purely in component 0
/// generate the quotient.
inline std::vector<MultiPoly> ideal_quotient(const std::vector<MultiPoly>& ideal, const MultiPoly& a,
                                             u64 p, unsigned e, const GroebnerOptions& opts = {}) {
    u64 q = ipow_u64(p, e);
    std::vector<MultiPoly> gens;
    for (const auto& g : ideal) gens.push_back(g.with_modulus(q).shifted_to_component(1));
    gens.push_back(a.with_modulus(q).shifted_to_component(1) + MultiPoly::constant(q, 1));
    GroebnerBasis gb(gens, p, e, opts);
    std::vector<MultiPoly> out;
    for (const auto& g : gb.basis())
        if (g.leading().mono.comp == 0) out.push_back(g);
    return out;
}

/// Generators of I ∩ J via the submodule generated by (g, g) for g in I and (h, 0) for h in J.
inline std::vector<MultiPoly> ideal_intersection(const std::vector<MultiPoly>& I, const std::vector<MultiPoly>& J,
                                                 u64 p, unsigned e, const GroebnerOptions& opts = {}) {
    u64 q = ipow_u64(p, e);
    std::vector<MultiPoly> gens;
    for (const auto& g : I) {
        MultiPoly gg = g.with_modulus(q);
        gens.push_back(gg.shifted_to_component(1) + gg);
    }
    for (const auto& h : J) gens.push_back(h.with_modulus(q).shifted_to_component(1));
    GroebnerBasis gb(gens, p, e, opts);
    std::vector<MultiPoly> out;
    for (const auto& g : gb.basis())
        if (g.leading().mono.comp == 0) out.push_back(g);
    return out;
}

} // namespace skolem
