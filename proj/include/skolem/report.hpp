#pragma once

/**
 * @file report.hpp
 * @brief Text and JSON renderings of a zero-set report.
 *
 * The JSON layout is described by docs/report.schema.json. Unbounded
 * integers (thresholds, members, rational parts, bounds, witnesses) are
 * decimal strings; machine-sized values are JSON numbers.
 */

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "skolem/decide.hpp"

namespace skolem {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { Text, Json };

struct EmitOptions {
    ReportFormat format = ReportFormat::Text;
    bool zero_set = false;  // include full set descriptions
    bool timing = true;
};

using Json = nlohmann::ordered_json;

inline Json to_json(const Certification& c) {
    Json j;
    j["status"] = c.proven ? "PROVEN" : "CERTIFIED_UP_TO";
    j["bound"] = c.proven ? Json(nullptr) : Json(c.bound.str());
    j["oracle"] = c.proven ? Json(nullptr) : Json(c.oracle);
    return j;
}

inline Json to_json(const Rational& r) {
    return Json{{"num", boost::multiprecision::numerator(r).str()}, {"den", boost::multiprecision::denominator(r).str()}};
}

inline Json to_json(const PNormalPart& part) {
    if (const auto* g = std::get_if<ProgressionZ>(&part))
        return Json{{"type", "progression"}, {"modulus", g->a.str()}, {"residue", g->b.str()}};
    const auto& D = std::get<ElementaryPNested>(part);
    Json coeffs = Json::array();
    for (std::size_t i = 0; i <= D.arity(); ++i) coeffs.push_back(to_json(D.coefficient(i)));
    return Json{{"type", "nested"}, {"p", D.p()}, {"step", D.step()}, {"coefficients", coeffs}};
}

inline Json to_json(const PNormalN& s) {
    Json fin = Json::array(), parts = Json::array();
    for (const auto& z : s.finite) fin.push_back(z.str());
    for (const auto& p : s.tail.parts) parts.push_back(to_json(p));
    return Json{{"kind", "p-normal"}, {"p", s.tail.p}, {"threshold", s.threshold.str()}, {"finite", fin}, {"parts", parts}};
}

inline Json to_json(const DigitDFA& A) {
    Json acc = Json::array(), delta = Json::array();
    for (std::size_t s = 0; s < A.size(); ++s) {
        if (A.accepting(static_cast<std::uint32_t>(s))) acc.push_back(s);
        Json row = Json::array();
        for (u64 d = 0; d < A.base(); ++d) row.push_back(A.next(static_cast<std::uint32_t>(s), d));
        delta.push_back(row);
    }
    return Json{{"kind", "automaton"}, {"base", A.base()},        {"digit_order", "lsb-first"},
                {"states", A.size()},  {"start", A.start()},       {"accepting", acc},
                {"transitions", delta}};
}

inline Json to_json(const AutomaticN& X) {
    if (X.normal_form()) return to_json(*X.normal_form());
    return to_json(X.dfa());
}

inline Json to_json(const Reason& r) { return Json{{"code", r.code}, {"message", r.message}}; }

inline Json report_json(const ZeroSetReport& r, const EmitOptions& opts = {}) {
    Json j;
    j["schema"] = "skolem-report";
    j["schema_version"] = kReportSchemaVersion;
    j["verdict"] = outcome_name(r.verdict);
    j["witness"] = r.witness ? Json(r.witness->str()) : Json(nullptr);
    j["witness_verified"] = r.witness_verified;
    j["certification"] = to_json(r.cert);
    Json comps = Json::array();
    for (const auto& c : r.components) {
        Json cj;
        cj["prime"] = c.prime;
        cj["exponent"] = c.exponent;
        cj["ring"] = c.ring;
        cj["adjoined"] = c.adjoined;
        cj["certification"] = to_json(c.cert);
        cj["failure"] = c.failure ? to_json(*c.failure) : Json(nullptr);
        cj["set_text"] = c.set.str();
        Json prim = Json::array();
        for (const auto& p : c.primaries) {
            Json sums = Json::array();
            for (const auto& s : p.sums)
                sums.push_back(Json{{"residue", s.residue},
                                    {"period", s.period},
                                    {"start", s.start},
                                    {"equation", s.equation},
                                    {"method", s.method},
                                    {"certification", to_json(s.cert)}});
            prim.push_back(Json{{"ideal", p.ideal},
                                {"primary_verified", p.primary_verified},
                                {"note", p.note},
                                {"start", p.start},
                                {"sums", sums}});
        }
        cj["primary_components"] = prim;
        if (opts.zero_set) cj["set"] = to_json(c.set);
        comps.push_back(cj);
    }
    j["components"] = comps;
    Json zs = Json::array();
    for (const auto& c : r.zero_set.components) {
        Json zj{{"set_text", c.set.str()}, {"certification", to_json(c.cert)}};
        if (opts.zero_set) zj["set"] = to_json(c.set);
        zs.push_back(zj);
    }
    j["zero_set"] = zs;
    j["assumptions"] = r.assumptions;
    Json reasons = Json::array();
    for (const auto& x : r.reasons) reasons.push_back(to_json(x));
    j["reasons"] = reasons;
    j["counters"] = Json{{"simple_sums", r.simple_sums}};
    if (opts.timing) j["timing"] = Json{{"seconds", r.seconds}};
    return j;
}

inline std::string report_text(const ZeroSetReport& r, const EmitOptions& opts = {}) {
    std::ostringstream out;
    out << "verdict: " << outcome_name(r.verdict);
    if (r.witness) out << " (witness n = " << *r.witness << (r.witness_verified ? ", verified" : "") << ")";
    out << "\ncertification: " << r.cert.str();
    if (!r.cert.proven) out << " via " << r.cert.oracle;
    out << "\n";
    for (const auto& c : r.components) {
        out << "component p = " << c.prime << "^" << c.exponent << ": " << c.cert.str() << "\n";
        out << "  ring: " << c.ring << "\n";
        if (!c.adjoined.empty()) out << "  adjoined roots: " << detail::join(c.adjoined) << "\n";
        if (c.failure) out << "  failed: " << c.failure->code << ": " << c.failure->message << "\n";
        for (const auto& p : c.primaries) {
            out << "  primary <" << detail::join(p.ideal) << ">" << (p.primary_verified ? "" : " (assumed)")
                << ", start " << p.start << "\n";
            for (const auto& s : p.sums)
                out << "    n = " << s.period << "z + " << s.residue << ": " << s.equation << " [" << s.method << ", "
                    << s.cert.str() << "]\n";
        }
        if (opts.zero_set) out << "  zero set: " << c.set.str() << "\n";
    }
    if (opts.zero_set) {
        out << "zero set:";
        if (r.zero_set.components.empty()) out << " empty";
        for (std::size_t i = 0; i < r.zero_set.components.size(); ++i)
            out << (i ? " u " : " ") << r.zero_set.components[i].set.str();
        out << "\n";
    }
    for (const auto& a : r.assumptions) out << "assumption: " << a << "\n";
    for (const auto& x : r.reasons) out << "reason: " << x.code << ": " << x.message << "\n";
    if (opts.timing) out << "time: " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
    return out.str();
}

inline std::string emit_report(const ZeroSetReport& r, const EmitOptions& opts = {}) {
    if (opts.format == ReportFormat::Json) return report_json(r, opts).dump(2) + "\n";
    return report_text(r, opts);
}

} // namespace skolem
