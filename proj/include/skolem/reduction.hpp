#pragma once

/**
 * @file reduction.hpp
 * @brief From a ring of characteristic T to primary rings of prime-power
 *        characteristic over which the characteristic polynomial splits.
 *
 *   crt_split        Z/T-presentation -> one ring per prime power p^e || T
 *   split_char_poly  adjoin roots until the characteristic polynomial splits
 *   primary_split    decompose <0> into primary ideals
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <string>
#include <utility>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/lrs.hpp"
#include "skolem/numtheory.hpp"
#include "skolem/ring.hpp"
#include "skolem/upoly.hpp"

namespace skolem {

/// A ring Z/T[vars]/<ideal> with T arbitrary; polynomials carry modulus T.
struct Presentation {
    u64 characteristic = 2;
    std::vector<std::string> variables;
    std::vector<MultiPoly> ideal;
};

struct CrtComponent {
    u64 prime = 2;
    unsigned exponent = 1;
    QuotientRing::Ptr ring;
    LRS lrs;
};

/// Ring of the p^e-component of a presentation.
inline QuotientRing::Ptr project_ring(const Presentation& P, u64 prime, unsigned exponent,
                                      const GroebnerOptions& opts = {}) {
    Modulus m(prime, exponent);
    std::vector<MultiPoly> gens;
    for (const auto& g : P.ideal) gens.push_back(g.with_modulus(m.value()));
    return QuotientRing::make(m, P.variables, std::move(gens), opts);
}

inline std::vector<CrtComponent> crt_split(const Presentation& P, const std::vector<MultiPoly>& coefficients,
                                           const std::vector<MultiPoly>& initial,
                                           const GroebnerOptions& opts = {}) {
    if (P.characteristic < 2) throw InvalidInput("characteristic must be at least 2");
    std::vector<CrtComponent> out;
    for (auto [p, e] : factorize(P.characteristic)) {
        CrtComponent c;
        c.prime = p;
        c.exponent = e;
        c.ring = project_ring(P, p, e, opts);
        std::vector<RingElem> a, g;
        for (const auto& x : coefficients) a.push_back(c.ring->elem(x.with_modulus(c.ring->q())));
        for (const auto& x : initial) g.push_back(c.ring->elem(x.with_modulus(c.ring->q())));
        c.lrs = LRS(c.ring, std::move(a), std::move(g));
        out.push_back(std::move(c));
    }
    return out;
}

/// The unique x mod prod(m_i) with x = r_i mod m_i (moduli pairwise coprime).
inline u64 crt_combine(const std::vector<std::pair<u64, u64>>& residues) {
    Integer x = 0, m = 1;
    for (auto [mi, ri] : residues) {
        // x + m*t = ri mod mi
        u64 mm = reduce_integer(m, mi);
        auto inv = inv_mod(mm, mi);
        if (!inv) throw InvalidInput("crt moduli are not coprime");
        u64 diff = submod(ri % mi, reduce_integer(x, mi), mi);
        u64 t = mulmod(diff, *inv, mi);
        x += m * t;
        m *= mi;
    }
    return static_cast<u64>(x);
}

/// Lifts component polynomials (one per CRT component, same order) to a polynomial mod T.
inline MultiPoly crt_lift(const std::vector<CrtComponent>& comps, const std::vector<MultiPoly>& parts, u64 T) {
    std::map<Monomial, std::vector<std::pair<u64, u64>>, bool (*)(const Monomial&, const Monomial&)> coeffs(
        [](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (const auto& t : parts[i].terms()) coeffs[t.mono];
    std::vector<Term> ts;
    for (auto& [mono, unused] : coeffs) {
        std::vector<std::pair<u64, u64>> res;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            u64 c = 0;
            for (const auto& t : parts[i].terms())
                if (t.mono == mono) c = t.coeff;
            res.push_back({comps[i].ring->q(), c});
        }
        ts.push_back({mono, crt_combine(res)});
    }
    return MultiPoly::from_terms(T, std::move(ts));
}

/// a = 0 in Z/T[vars]/I iff every projection vanishes.
inline bool crt_is_zero(const std::vector<CrtComponent>& comps, const MultiPoly& a) {
    for (const auto& c : comps)
        if (!c.ring->elem(a.with_modulus(c.ring->q())).is_zero()) return false;
    return true;
}

struct CrtZeroDivisor {
    Verdict verdict = Verdict::Unknown;
    std::optional<MultiPoly> witness;  // modulo T
};

/// Zero-divisor test in the composite ring: a is one iff some projection is.
inline CrtZeroDivisor crt_zero_divisor(const Presentation& P, const std::vector<CrtComponent>& comps,
                                       const MultiPoly& a) {
    CrtZeroDivisor out;
    out.verdict = Verdict::False;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto zd = is_zero_divisor(comps[i].ring->elem(a.with_modulus(comps[i].ring->q())));
        if (zd.verdict == Verdict::Unknown) out.verdict = Verdict::Unknown;
        if (zd.verdict != Verdict::True) continue;
        std::vector<MultiPoly> parts;
        for (std::size_t j = 0; j < comps.size(); ++j)
            parts.push_back(j == i ? zd.witness->poly() : MultiPoly(comps[j].ring->q()));
        out.verdict = Verdict::True;
        out.witness = crt_lift(comps, parts, P.characteristic);
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Root splitting
// ---------------------------------------------------------------------------

struct SplitData {
    QuotientRing::Ptr extended_ring;
    std::vector<std::pair<RingElem, unsigned>> roots;  // root, multiplicity
    std::vector<std::string> adjoined;                 // names of fresh variables
};

enum class SplitStrategy {
    BaseRootsFirst,  // look for roots in the current ring before adjoining
    Generic          // always adjoin a fresh root
};

namespace detail {

/// Candidate roots: all elements of a small finite ring, else degree <= 1 polynomials.
inline std::vector<RingElem> root_candidates(const QuotientRing::Ptr& R) {
    if (R->is_finite() && R->finite_info()->size <= 65536) return R->enumerate();
    std::vector<RingElem> out;
    const std::size_t n = R->variables().size();
    const u64 q = R->q();
    Integer count = ipow(Integer(q), static_cast<unsigned>(n + 1));
    if (count <= 4096) {
        std::vector<u64> digits(n + 1, 0);
        for (;;) {
            MultiPoly f = MultiPoly::constant(q, static_cast<i64>(digits[0]));
            for (std::size_t i = 0; i < n; ++i)
                if (digits[i + 1]) f = f + MultiPoly::monomial(q, Monomial::var(i), digits[i + 1]);
            out.push_back(R->elem(f));
            std::size_t k = 0;
            while (k <= n && ++digits[k] == q) digits[k++] = 0;
            if (k > n) break;
        }
        return out;
    }
    for (i64 c : {0, 1, -1}) out.push_back(R->elem(c));
    for (std::size_t i = 0; i < n; ++i)
        for (i64 c : {0, 1, -1}) {
            out.push_back(R->var(i) + R->elem(c));
            out.push_back(-R->var(i) + R->elem(c));
        }
    return out;
}

inline UPoly<RingElem> map_upoly(const UPoly<RingElem>& f, const QuotientRing::Ptr& R) {
    UPoly<RingElem> g;
    for (const auto& c : f) g.push_back(R->elem(c.poly().with_modulus(R->q())));
    return g;
}

} // namespace detail

/// Splits a monic f into linear factors, adjoining roots t1, t2, ... as needed.
inline SplitData split_char_poly(const QuotientRing::Ptr& A, const UPoly<RingElem>& f,
                                 SplitStrategy strategy = SplitStrategy::BaseRootsFirst) {
    if (f.empty() || !f.back().is_one()) throw InvalidInput("polynomial to split must be monic");
    SplitData out;
    QuotientRing::Ptr R = A;
    UPoly<RingElem> g = f;
    std::vector<RingElem> found;
    std::vector<RingElem> candidates;
    bool candidates_fresh = false;
    while (g.size() > 1) {
        std::optional<RingElem> root;
        if (g.size() == 2) {
            root = -g[0];
        } else if (strategy == SplitStrategy::BaseRootsFirst) {
            if (!candidates_fresh) {
                candidates = detail::root_candidates(R);
                candidates_fresh = true;
            }
            for (const auto& r : candidates)
                if (upoly::eval(g, r, R->zero()).is_zero()) { root = r; break; }
        }
        if (!root) {
            std::string name = "t" + std::to_string(out.adjoined.size() + 1);
            for (int k = 0; std::find(R->variables().begin(), R->variables().end(), name) != R->variables().end(); ++k)
                name = "t" + std::to_string(out.adjoined.size() + 1) + "_" + std::to_string(k);
            const std::size_t idx = R->variables().size();
            if (idx >= kMaxVars) throw ResourceExhausted("too many adjoined roots");
            MultiPoly rel(R->q());
            for (std::size_t i = 0; i < g.size(); ++i)
                rel = rel + g[i].poly() * MultiPoly::monomial(R->q(), Monomial::var(idx, static_cast<std::uint32_t>(i)));
            R = R->extend({name}, {rel});
            out.adjoined.push_back(name);
            g = detail::map_upoly(g, R);
            for (auto& r : found) r = R->elem(r.poly());
            candidates_fresh = false;
            root = R->var(idx);
        }
        found.push_back(*root);
        g = upoly::divide_linear(g, *root, R->zero());
    }
    // Group equal roots, keeping first-occurrence order.
    for (const auto& r : found) {
        auto it = std::find_if(out.roots.begin(), out.roots.end(), [&](const auto& x) { return x.first == r; });
        if (it == out.roots.end()) out.roots.push_back({r, 1});
        else ++it->second;
    }
    out.extended_ring = R;
    // Expanding the product must give back f.
    UPoly<RingElem> prod{R->one()};
    for (const auto& [r, m] : out.roots)
        for (unsigned k = 0; k < m; ++k) prod = upoly::mul(prod, UPoly<RingElem>{-r, R->one()}, R->zero());
    if (!upoly::equal(prod, detail::map_upoly(f, R))) throw Error("internal", "root splitting check failed");
    return out;
}

// ---------------------------------------------------------------------------
// Primary decomposition
// ---------------------------------------------------------------------------

struct PrimaryComponent {
    QuotientRing::Ptr ring;
    std::vector<MultiPoly> ideal;  // generators of P_j in the parent ring
    bool primary_verified = false;
    std::string note;
};

/// A user-supplied decomposition of <0>: generator strings per component.
using UserDecomposition = std::vector<std::vector<std::string>>;

namespace detail {

/// Checks intersection of (I + P_j) over j equals I.
inline bool intersection_is_ideal(const QuotientRing::Ptr& A, const std::vector<std::vector<MultiPoly>>& parts) {
    const auto& gb = A->ideal().groebner();
    std::vector<MultiPoly> acc = parts.front();
    for (std::size_t j = 1; j < parts.size(); ++j)
        acc = ideal_intersection(acc, parts[j], A->prime(), A->exponent());
    for (const auto& g : acc)
        if (!gb.contains(g)) return false;
    return true;
}

/// The components are local (hence primary) iff A/pA has no nontrivial idempotents.
inline bool finite_ring_is_local(const QuotientRing::Ptr& A) {
    auto Rp = A->reduce_modulus(1);
    if (!Rp->is_finite() || Rp->finite_info()->size > 65536) return false;
    for (const auto& x : Rp->enumerate())
        if (!x.is_zero() && !x.is_one() && x * x == x) return false;
    return true;
}

inline bool is_pure_power(const Monomial& m) {
    int nz = 0;
    for (auto e : m.e) nz += e != 0;
    return nz <= 1;
}

/// Irreducible decomposition of a monomial ideal (all generators monomials with unit coefficient).
inline std::vector<std::vector<Monomial>> monomial_decomposition(std::vector<Monomial> gens) {
    // Drop generators divisible by others.
    auto minimize = [](std::vector<Monomial> g) {
        std::vector<Monomial> out;
        for (std::size_t i = 0; i < g.size(); ++i) {
            bool red = false;
            for (std::size_t j = 0; j < g.size() && !red; ++j)
                if (i != j && g[j].divides(g[i]) && (g[j] != g[i] || j < i)) red = true;
            if (!red) out.push_back(g[i]);
        }
        std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
        return out;
    };
    std::vector<std::vector<Monomial>> done;
    std::vector<std::vector<Monomial>> todo{minimize(std::move(gens))};
    while (!todo.empty()) {
        auto g = std::move(todo.back());
        todo.pop_back();
        auto it = std::find_if(g.begin(), g.end(), [](const Monomial& m) { return !is_pure_power(m); });
        if (it == g.end()) { done.push_back(g); continue; }
        std::size_t v = 0;
        while (it->e[v] == 0) ++v;
        Monomial head = Monomial::var(v, it->e[v]);
        Monomial rest = *it;
        rest.e[v] = 0;
        auto g1 = g, g2 = g;
        g1[it - g.begin()] = head;
        g2[it - g.begin()] = rest;
        todo.push_back(minimize(std::move(g1)));
        todo.push_back(minimize(std::move(g2)));
    }
    // A component containing another is redundant in the intersection.
    auto contains = [](const std::vector<Monomial>& big, const std::vector<Monomial>& small) {
        for (const auto& m : small) {
            bool in = false;
            for (const auto& b : big) in = in || b.divides(m);
            if (!in) return false;
        }
        return true;
    };
    std::vector<std::vector<Monomial>> out;
    for (std::size_t i = 0; i < done.size(); ++i) {
        bool red = false;
        for (std::size_t j = 0; j < done.size() && !red; ++j)
            if (i != j && contains(done[i], done[j]) && (!contains(done[j], done[i]) || j < i)) red = true;
        if (!red) out.push_back(done[i]);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](const Monomial& x, const Monomial& y) { return compare(x, y) > 0; });
    });
    return out;
}

} // namespace detail

namespace detail {

/// {x : x^p = x} in an F_p-algebra, as an F_p-space spanned from the kernel of Frobenius - 1.
/// It is a product of copies of F_p, one per local factor, so its idempotents are those of the ring.
inline std::vector<RingElem> frobenius_fixed(const QuotientRing::Ptr& Rp) {
    const u64 p = Rp->q();
    const auto& slots = Rp->finite_info()->slots;
    const std::size_t n = slots.size();
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t j = 0; j < n; ++j) index[slots[j].first] = j;
    // Column j holds the coordinates of m_j^p - m_j.
    std::vector<std::vector<u64>> M(n, std::vector<u64>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        RingElem m = Rp->elem(MultiPoly::monomial(p, slots[j].first)).pow(p);
        for (const auto& t : m.poly().terms()) M[index.at(t.mono)][j] = t.coeff;
        M[j][j] = submod(M[j][j], 1, p);
    }
    // Reduced row echelon form, then read off a kernel basis.
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < n; ++c) {
        std::size_t r = row;
        while (r < n && M[r][c] == 0) ++r;
        if (r == n) continue;
        std::swap(M[r], M[row]);
        u64 inv = *inv_mod(M[row][c], p);
        for (auto& v : M[row]) v = static_cast<u64>(static_cast<u128>(v) * inv % p);
        for (std::size_t k = 0; k < n; ++k)
            if (k != row && M[k][c] != 0) {
                u64 f = M[k][c];
                for (std::size_t l = 0; l < n; ++l)
                    M[k][l] = submod(M[k][l], static_cast<u64>(static_cast<u128>(f) * M[row][l] % p), p);
            }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<RingElem> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Term> ts{{slots[f].first, 1}};
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            if (M[r][f] != 0) ts.push_back({slots[pivot_col[r]].first, submod(0, M[r][f], p)});
        basis.push_back(Rp->elem(MultiPoly::from_terms(p, ts)));
    }
    Integer count = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) count *= p;
    if (count > 65536) throw UnsupportedDecomposition("too many local factors to enumerate idempotents");
    std::vector<RingElem> out{Rp->zero()};
    for (const auto& b : basis) {
        std::vector<RingElem> next;
        for (const auto& x : out)
            for (u64 c = 0; c < p; ++c) next.push_back(x + b * Rp->elem(static_cast<i64>(c)));
        out = std::move(next);
    }
    return out;
}

} // namespace detail


/**
 * Primary decomposition of <0> in A.
 *
 * Finite rings: primitive idempotents of A/pA lifted to A; each A/<1 - e_j> is
 * local and therefore primary. Infinite rings: the zero ideal of a polynomial
 * ring is primary; monomial ideals split into irreducible (primary) monomial
 * ideals; otherwise a user decomposition is required.
 */
inline std::vector<PrimaryComponent> primary_split(const QuotientRing::Ptr& A,
                                                   const std::optional<UserDecomposition>& user = std::nullopt,
                                                   const GroebnerOptions& opts = {}) {
    const u64 q = A->q();
    const auto& basis = A->ideal().groebner().basis();
    std::vector<PrimaryComponent> out;
    auto finish = [&](std::vector<std::vector<MultiPoly>> parts, bool verified, const std::string& note) {
        if (parts.size() > 1 && !detail::intersection_is_ideal(A, parts))
            throw InvalidInput("primary components do not intersect to the zero ideal");
        for (auto& gens : parts) {
            PrimaryComponent c;
            c.ring = A->extend({}, gens);
            c.ideal = gens;
            c.primary_verified = verified;
            c.note = note;
            if (!verified && c.ring->is_finite() && detail::finite_ring_is_local(c.ring)) {
                c.primary_verified = true;
                c.note = "local finite ring";
            }
            if (c.ring->one().is_zero()) continue;
            out.push_back(std::move(c));
        }
        return out;
    };

    if (user) {
        std::vector<std::vector<MultiPoly>> parts;
        for (const auto& comp : *user) {
            std::vector<MultiPoly> gens;
            for (const auto& s : comp) gens.push_back(parse_poly(s, A->variables(), q));
            parts.push_back(std::move(gens));
        }
        if (parts.empty()) throw InvalidInput("empty primary decomposition");
        return finish(std::move(parts), false, "supplied decomposition; primariness assumed");
    }

    if (A->is_finite()) {
        auto Rp = A->reduce_modulus(1);
        std::vector<RingElem> idem;
        for (const auto& x : detail::frobenius_fixed(Rp))
            if (!x.is_zero() && x * x == x) idem.push_back(x);
        std::vector<RingElem> primitive;
        for (const auto& e : idem) {
            bool prim = true;
            for (const auto& f : idem)
                if (!(f == e) && e * f == f) prim = false;
            if (prim) primitive.push_back(e);
        }
        if (primitive.size() <= 1) return finish({{}}, true, "local finite ring");
        std::vector<std::vector<MultiPoly>> parts;
        for (const auto& e0 : primitive) {
            RingElem e = A->elem(e0.poly().with_modulus(q));
            for (unsigned it = 0; it < 64 && !(e * e == e); ++it)
                e = e * e * A->elem(3) - e * e * e * A->elem(2);
            if (!(e * e == e)) throw Error("internal", "idempotent lifting failed");
            parts.push_back({(A->one() - e).poly()});
        }
        return finish(std::move(parts), true, "idempotent splitting");
    }

    if (basis.empty()) return finish({{}}, true, "polynomial ring over Z/p^e");

    bool monomial = std::all_of(basis.begin(), basis.end(), [&](const MultiPoly& g) {
        return g.size() == 1 && A->ideal().groebner().valuation(g.leading().coeff) == 0;
    });
    if (monomial) {
        std::vector<Monomial> gens;
        for (const auto& g : basis) gens.push_back(g.leading().mono);
        std::vector<std::vector<MultiPoly>> parts;
        for (const auto& comp : detail::monomial_decomposition(gens)) {
            std::vector<MultiPoly> ps;
            for (const auto& m : comp) ps.push_back(MultiPoly::monomial(q, m));
            parts.push_back(std::move(ps));
        }
        return finish(std::move(parts), true, "irreducible monomial ideal");
    }
    (void)opts;
    throw UnsupportedDecomposition("no primary decomposition available for " + A->describe());
}

} // namespace skolem
