// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "skolem/skolem.hpp"

using namespace skolem;
namespace fs = std::filesystem;

namespace {

struct Check {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

fs::path g_corpus = SKOLEM_SOURCE_DIR "/corpus";

std::vector<Problem> corpus() {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(g_corpus))
        if (e.path().extension() == ".skl") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<Problem> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream s;
        s << in.rdbuf();
        out.push_back(parse_problem(s.str()));
    }
    return out;
}

/// Positions in [0, B] where membership and brute force disagree.
std::size_t discrepancies(const MixedUnion& U, const std::vector<u64>& zeros, u64 B) {
    std::vector<bool> z(B + 1, false);
    for (u64 n : zeros) z[n] = true;
    std::size_t bad = 0;
    for (u64 n = 0; n <= B; ++n) bad += U.contains(n) != z[n];
    return bad;
}

Problem fibonacci(u64 T) {
    Problem P;
    P.characteristic = T;
    P.coefficients = {"1", "1"};
    P.initial = {"0", "1"};
    return P;
}

Problem derksen() {
    Problem P;
    P.characteristic = 2;
    P.variables = {"X"};
    P.coefficients = {"0", "X^2 + X + 1", "X^2 + X"};
    P.initial = {"1", "0", "0"};
    return P;
}

Check criterion1() {
    auto t0 = Clock::now();
    auto P = fibonacci(6);
    auto r = decide_skolem(P);
    double secs = since(t0);
    std::size_t bad = discrepancies(r.zero_set, brute_zero_set(components(P), 10000), 10000);
    bool ok = r.verdict == skolem::Outcome::HasZero && r.witness == Integer(0) && r.witness_verified && bad == 0 &&
              secs < 5;
    std::ostringstream d;
    d << outcome_name(r.verdict) << ", witness " << (r.witness ? r.witness->str() : "none") << ", " << bad
      << " discrepancies on [0, 10^4], " << secs << " s";
    return {ok, d.str()};
}

Check criterion2() {
    auto t0 = Clock::now();
    auto P = derksen();
    auto comps = components(P);
    auto zeros = brute_zero_set(comps, 4096);
    std::vector<u64> powers;
    for (u64 z = 1; z <= 4096; z *= 2) powers.push_back(z);
    DecideOptions o = options_for(P);
    o.backend = Backend::Certify;
    auto r = decide_skolem(P, o);
    bool nested = false;
    if (r.components.size() == 1 && r.components[0].set.normal_form()) {
        const auto& s = *r.components[0].set.normal_form();
        nested = s.finite.empty() && s.tail.parts.size() == 1 &&
                 s.tail.parts[0] == PNormalPart(ElementaryPNested::make(2, 1, {0, 1}));
    }
    const Integer next = 8192;
    bool predicted = r.zero_set.contains(next) && term_at(comps[0].lrs, next).is_zero();
    double secs = since(t0);
    bool ok = zeros == powers && nested && predicted && r.verdict == skolem::Outcome::HasZero && secs < 60;
    std::ostringstream d;
    d << "brute zeros " << (zeros == powers ? "= {1, 2, ..., 4096}" : "differ") << ", set "
      << r.components[0].set.str() << " " << r.components[0].cert.str() << ", 2^13 "
      << (predicted ? "re-verified" : "not verified") << ", " << secs << " s";
    return {ok, d.str()};
}

Check criterion3() {
    std::mt19937_64 rng(2024);
    struct RingSpec {
        u64 T;
        std::vector<std::string> vars, ideal;
    };
    const std::vector<RingSpec> rings{{12, {}, {}}, {8, {}, {}}, {4, {"x"}, {"x^2", "2*x"}}};
    std::size_t runs = 0, bad_runs = 0, unknown = 0;
    std::string first_bad;
    for (const auto& R : rings) {
        auto elem = [&] {
            std::string s = std::to_string(rng() % R.T);
            if (!R.vars.empty() && rng() % 2) s += " + x";
            return s;
        };
        for (int made = 0; made < 100;) {
            Problem P;
            P.characteristic = R.T;
            P.variables = R.vars;
            P.ideal = R.ideal;
            std::size_t d = 1 + rng() % 3;
            for (std::size_t i = 0; i < d; ++i) {
                P.coefficients.push_back(elem());
                P.initial.push_back(elem());
            }
            try {
                P = parse_problem(emit_problem(P));
            } catch (const ParseError&) {
                continue;  // trailing coefficient vanished
            }
            ++made;
            ++runs;
            auto r = decide_skolem(P);
            unknown += r.verdict == skolem::Outcome::UnknownBounded;
            if (discrepancies(r.zero_set, brute_zero_set(components(P), 10000), 10000) != 0) {
                ++bad_runs;
                if (first_bad.empty()) first_bad = emit_problem(P);
            }
        }
    }
    std::ostringstream d;
    d << runs << " random recurrences over Z/12, Z/8, Z/4[x]/<x^2, 2x>, " << bad_runs << " with discrepancies, "
      << unknown << " undecided";
    if (!first_bad.empty()) d << "; first failure:\n" << first_bad;
    return {bad_runs == 0 && runs == 300, d.str()};
}

Check criterion4() {
    // Both sides of the identity expanded independently: sum_{k<=n} 3^k against (n+1)3^n + 2 C(n+1, 2) 3^(n-1).
    std::size_t bad_identity = 0;
    u64 lhs = 0, pw = 1;
    for (u64 n = 0; n < 500; ++n) {
        lhs = (lhs + pw) % 4;
        u64 rhs = (n + 1) % 4 * pw % 4;
        if (n >= 1) rhs = (rhs + 2 * (binomial_mod(n + 1, 2, 4) * powmod(3, n - 1, 4))) % 4;
        bad_identity += lhs != rhs;
        pw = pw * 3 % 4;
    }
    // The library's partial fractions of 1/((1-Y)(1-3Y)), expanded, against the direct series.
    auto R = QuotientRing::parse(4, {}, {});
    auto D = classify_roots({{R->elem(1), 1}, {R->elem(3), 1}});
    auto series = expand_series(partial_fractions({Fraction::of(D.S, 1)}, D), D, 500);
    std::size_t bad_library = 0;
    u64 sum = 0;
    pw = 1;
    for (u64 n = 0; n < 500; ++n) {
        sum = (sum + pw) % 4;
        bad_library += !(series[n] == Fraction::of(D.S, static_cast<i64>(sum)));
        pw = pw * 3 % 4;
    }
    std::size_t checked = 0, bad_eps = 0;
    for (const auto& P : corpus()) {
        for (const auto& C : components(P)) {
            auto split = split_char_poly(C.ring, char_poly(C.lrs).poly);
            auto ext = C.lrs.map_to(split.extended_ring);
            for (const auto& comp : primary_split(split.extended_ring, decomposition_for(P, C.prime))) {
                auto Lj = ext.map_to(comp.ring);
                std::vector<std::pair<RingElem, unsigned>> roots;
                for (const auto& [r, m] : split.roots) roots.emplace_back(comp.ring->elem(r.poly().with_modulus(comp.ring->q())), m);
                auto eps = exp_poly_sum(Lj, roots);
                for (u64 n = eps.start; n <= eps.start + 200; ++n) {
                    ++checked;
                    bad_eps += !(eps.value_at(n) == Fraction(eps.set(), term_at(Lj, n)));
                }
            }
        }
    }
    std::ostringstream d;
    d << bad_identity + bad_library << " coefficient mismatches in the first 500, " << bad_eps << " of " << checked
      << " exponential-polynomial values differ from term_at";
    return {bad_identity + bad_library == 0 && bad_eps == 0 && checked > 0, d.str()};
}

AutomaticN powers(u64 p) {
    PNormalN s;
    s.tail.p = p;
    s.tail.parts.push_back(ElementaryPNested::make(p, 1, {0, 1}));
    return AutomaticN::symbolic(p, s);
}

AutomaticN shifted_powers(u64 p, i64 shift) {
    PNormalN s;
    s.tail.p = p;
    s.tail.parts.push_back(ElementaryPNested::make(p, 1, {shift, 1}));
    return AutomaticN::symbolic(p, s);
}

AutomaticN progression(u64 p, u64 a, u64 b) {
    PNormalN s;
    s.tail.p = p;
    s.tail.parts.push_back(ProgressionZ::make(a, b));
    return AutomaticN::symbolic(p, s);
}

/// All members when every component is finite.
std::optional<std::vector<Integer>> all_members(const MixedUnion& U) {
    std::set<Integer> out;
    for (const auto& c : U.components) {
        if (!c.set.is_finite()) return std::nullopt;
        for (const auto& z : c.set.enumerate_up_to(ipow(Integer(c.set.base()), c.set.dfa().size() + 1))) out.insert(z);
    }
    return std::vector<Integer>(out.begin(), out.end());
}

Check criterion5() {
    CrossOptions co;
    co.exponent_bound = 64;
    std::ostringstream d;
    bool ok = true;

    auto t0 = Clock::now();
    auto a = intersect_two(powers(2), powers(3), co);
    double ta = since(t0);
    auto ma = all_members(a);
    ok = ok && ma == std::vector<Integer>{1} && ta < 1;
    d << "{2^a} n {3^b} = {1}: " << (ma == std::vector<Integer>{1} ? "yes" : "no") << " (" << a.cert().str() << ", "
      << ta << " s); ";

    t0 = Clock::now();
    auto b = intersect_two(shifted_powers(2, 1), powers(3), co);
    double tb = since(t0);
    auto mb = all_members(b);
    ok = ok && mb == std::vector<Integer>{3, 9} && tb < 1;
    d << "{1 + 2^a} n {3^b} = {3, 9}: " << (mb == std::vector<Integer>{3, 9} ? "yes" : "no") << " (" << tb
      << " s); ";

    auto c = intersect_two(progression(2, 4, 1), progression(3, 6, 3), co);
    bool cz = c.cert().proven;
    for (u64 z = 0; z <= 10000; ++z) cz = cz && c.contains(z) == (z % 12 == 9);
    ok = ok && cz;
    d << "(4Z+1) n (6Z+3) = 12Z+9 PROVEN: " << (cz ? "yes" : "no") << "; ";

    auto e = intersect_multi({{powers(2), Certification::proof()},
                              {powers(3), Certification::proof()},
                              {progression(5, 5, 1), Certification::proof()}},
                             co);
    auto me = all_members(e);
    ok = ok && me == std::vector<Integer>{1};
    d << "{2^a} n {3^b} n (5Z+1) = {1}: " << (me == std::vector<Integer>{1} ? "yes" : "no");
    return {ok, d.str()};
}

/// Membership straight from the definition: finite part below the threshold, parts above it.
class Definitional {
public:
    Definitional(const PNormalN& s, const Integer& hi) : s_(s) {
        for (const auto& part : s.tail.parts) {
            std::set<Integer> vals;
            if (const auto* D = std::get_if<ElementaryPNested>(&part)) {
                unsigned k = 0;
                for (Integer v = 1; v <= hi * 64 * D->denominator(); v *= ipow(Integer(D->p()), D->step())) ++k;
                for (const auto& z : D->members_with_exponents_up_to(k)) vals.insert(z);
            }
            values_.push_back(std::move(vals));
        }
    }

    bool contains(const Integer& z) const {
        if (z < 0) return false;
        if (z < s_.threshold) return std::binary_search(s_.finite.begin(), s_.finite.end(), z);
        for (std::size_t i = 0; i < s_.tail.parts.size(); ++i) {
            if (const auto* g = std::get_if<ProgressionZ>(&s_.tail.parts[i])) {
                if (floor_mod(z - g->b, g->a) == 0) return true;
            } else if (values_[i].count(z)) {
                return true;
            }
        }
        return false;
    }

private:
    PNormalN s_;
    std::vector<std::set<Integer>> values_;
};

Check criterion6() {
    std::vector<AutomaticN> sets;
    for (const auto& P : corpus()) {
        auto r = decide_skolem(P);
        for (const auto& c : r.components)
            if (c.set.normal_form()) sets.push_back(c.set);
        for (const auto& c : r.zero_set.components)
            if (c.set.normal_form()) sets.push_back(c.set);
    }
    for (u64 p : {2, 3, 5}) {
        sets.push_back(powers(p));
        sets.push_back(shifted_powers(p, 1));
        sets.push_back(progression(p, 12, 9));
    }
    std::size_t bad_single = 0, bad_product = 0, pairs = 0;
    std::vector<Definitional> defs;
    for (const auto& X : sets) defs.emplace_back(*X.normal_form(), 10000);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (u64 z = 0; z <= 4096; ++z) bad_single += sets[i].dfa().accepts(z) != defs[i].contains(z);
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            if (sets[i].base() != sets[j].base()) continue;
            ++pairs;
            auto prod = dfa_product(sets[i].dfa(), sets[j].dfa());
            for (u64 z = 0; z <= 10000; ++z)
                bad_product += prod.accepts(z) != (defs[i].contains(z) && defs[j].contains(z));
        }
    std::ostringstream d;
    d << sets.size() << " symbolic sets, " << bad_single << " DFA disagreements on [0, 4096]; " << pairs
      << " products, " << bad_product << " disagreements on [0, 10^4]";
    return {bad_single == 0 && bad_product == 0, d.str()};
}

MultiPoly random_poly(std::mt19937_64& rng, u64 q, std::size_t nvars, unsigned max_deg, int max_terms) {
    std::vector<Term> ts;
    int n = static_cast<int>(rng() % (max_terms + 1));
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (std::size_t v = 0; v < nvars; ++v) m.e[v] = static_cast<unsigned>(rng() % (max_deg + 1));
        ts.push_back({m, rng() % q});
    }
    return MultiPoly::from_terms(q, std::move(ts));
}

Check criterion7() {
    struct RingCase {
        u64 modulus;
        std::vector<std::string> vars, gens;
    };
    const std::vector<RingCase> rings{{4, {"x", "y"}, {"x^2 - 2*y", "y^2"}}, {2, {"x", "y"}, {"x*y"}},
                                      {9, {"x"}, {"x^3 + 3*x"}},           {8, {"x"}, {"4*x", "x^2 - 2"}},
                                      {4, {"x"}, {"x^2", "2*x"}},          {3, {"x", "y"}, {"x^2 - y", "y^2 - x"}},
                                      {5, {"t"}, {}}};
    std::mt19937_64 rng(7);
    std::size_t checks = 0, failures = 0;
    auto check = [&](bool ok) {
        ++checks;
        failures += !ok;
    };
    for (const auto& rc : rings) {
        auto R = QuotientRing::parse(rc.modulus, rc.vars, rc.gens);
        const std::size_t nv = rc.vars.size();
        for (int it = 0; it < 50; ++it) {
            // Normal forms are canonical and compatible with the ring operations.
            MultiPoly f = random_poly(rng, R->q(), nv, 4, 5), g = random_poly(rng, R->q(), nv, 4, 5);
            check(R->normal_form(f + g) == R->normal_form(R->normal_form(f) + R->normal_form(g)));
            check(R->normal_form(f * g) == R->normal_form(R->normal_form(f) * R->normal_form(g)));
            check(R->normal_form(R->normal_form(f)) == R->normal_form(f));
            MultiPoly comb(R->q());
            for (const auto& h : R->ideal().generators()) comb = comb + random_poly(rng, R->q(), nv, 3, 4) * h;
            check(R->normal_form(comb).is_zero());
            check(R->normal_form(f + comb) == R->normal_form(f));
            // Zero-divisor witnesses annihilate; nilpotency indices are exact.
            RingElem a = R->elem(random_poly(rng, R->q(), nv, 2, 3));
            auto zd = is_zero_divisor(a);
            if (zd.verdict == Verdict::True) check(zd.witness && !zd.witness->is_zero() && (a * *zd.witness).is_zero());
            if (auto l = nilpotency_index(a, default_nilpotency_cap(*R))) {
                check(a.pow(*l).is_zero());
                if (*l > 1) check(!a.pow(*l - 1).is_zero());
            }
        }
        if (R->is_finite()) {
            auto all = R->enumerate();
            for (const auto& a : all) {
                bool brute = false;
                for (const auto& x : all) brute = brute || (!x.is_zero() && (a * x).is_zero());
                check((is_zero_divisor(a).verdict == Verdict::True) == brute);
            }
        }
    }
    // Localization axioms.
    auto R = QuotientRing::parse(4, {"x"}, {});
    auto S = MultiplicativeSet::make(R, {R->parse_elem("x"), R->parse_elem("x + 1"), R->elem(3)});
    auto frac = [&] {
        return Fraction(S, R->elem(random_poly(rng, 4, 1, 3, 3)),
                        {static_cast<u32>(rng() % 3), static_cast<u32>(rng() % 3), static_cast<u32>(rng() % 3)});
    };
    for (int it = 0; it < 200; ++it) {
        Fraction a = frac(), b = frac(), c = frac();
        check((a + b) + c == a + (b + c));
        check((a * b) * c == a * (b * c));
        check(a * (b + c) == a * b + a * c);
        check(a - a == Fraction::of(S, 0));
    }
    std::ostringstream d;
    d << checks << " ring-core property checks, " << failures << " failures";
    return {failures == 0, d.str()};
}

}  // namespace

int main() {
    const std::vector<std::function<Check()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i]();
        } catch (const std::exception& e) {
            c = {false, std::string("error: ") + e.what()};
        }
        failed += !c.pass;
        std::cout << "criterion " << i + 1 << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.detail << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
