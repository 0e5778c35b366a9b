#pragma once

/**
 * @file problem.hpp
 * @brief Problem files: a sectioned plain-text format.
 *
 *     [ring]
 *     characteristic = 6
 *     variables = X
 *     ideal = X^2
 *
 *     [lrs]
 *     coefficients = 1, 1
 *     initial = 0, 1
 *
 *     [primary_decomposition]
 *     component = X
 *     component@2 = X + 1
 *
 *     [options]
 *     bound = 128
 *     certify_bound = 4096
 *     backend = auto
 *
 * Blank lines and lines starting with '#' are ignored. Lists are comma
 * separated. A decomposition entry tagged @p applies only to the p-part of
 * the characteristic.
 */

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "skolem/errors.hpp"
#include "skolem/poly.hpp"
#include "skolem/reduction.hpp"

namespace skolem {

enum class Backend { Auto, Finite, Certify };

inline std::string backend_name(Backend b) {
    switch (b) {
        case Backend::Finite: return "finite";
        case Backend::Certify: return "certify";
        default: return "auto";
    }
}

inline std::optional<Backend> parse_backend(std::string_view s) {
    if (s == "auto") return Backend::Auto;
    if (s == "finite") return Backend::Finite;
    if (s == "certify") return Backend::Certify;
    return std::nullopt;
}

struct DecompositionEntry {
    std::optional<u64> prime;
    std::vector<std::string> generators;
    bool operator==(const DecompositionEntry&) const = default;
};

struct ProblemOptions {
    std::optional<u64> bound;          // exponent bound for two-power equations
    std::optional<u64> certify_bound;  // enumeration bound of the certify backend
    std::optional<Backend> backend;
    bool operator==(const ProblemOptions&) const = default;
};

struct Problem {
    u64 characteristic = 2;
    std::vector<std::string> variables;
    std::vector<std::string> ideal;
    std::vector<std::string> coefficients;
    std::vector<std::string> initial;
    std::vector<DecompositionEntry> decomposition;
    ProblemOptions options;
    bool operator==(const Problem&) const = default;
};

namespace detail {

struct ListItem {
    std::string text;
    std::size_t column;  // 1-based
};

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

class ProblemParser {
public:
    explicit ProblemParser(std::string_view text) : text_(text) {}

    Problem parse() {
        std::size_t line_no = 0, pos = 0;
        while (pos < text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos) end = text_.size();
            line(++line_no, text_.substr(pos, end - pos));
            pos = end + 1;
        }
        eof_line_ = line_no + 1;
        return finish();
    }

private:
    struct Field {
        std::size_t line = 0;
        std::size_t column = 0;  // of the value
        std::string value;
    };

    static constexpr const char* kSections[] = {"[ring]", "[lrs]", "[primary_decomposition]", "[options]"};

    [[noreturn]] static void fail(std::size_t line, std::size_t col, std::vector<std::string> expected,
                                  const std::string& msg) {
        throw ParseError(line, col, std::move(expected), msg);
    }

    static std::vector<std::string> keys_of(const std::string& section) {
        if (section == "ring") return {"characteristic", "variables", "ideal"};
        if (section == "lrs") return {"coefficients", "initial"};
        if (section == "options") return {"bound", "certify_bound", "backend"};
        return {"component", "component@<prime>"};
    }

    void line(std::size_t no, std::string_view raw) {
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        std::size_t first = raw.find_first_not_of(" \t");
        if (first == std::string_view::npos || raw[first] == '#') return;
        std::size_t last = raw.find_last_not_of(" \t");
        std::string_view body = raw.substr(first, last - first + 1);
        if (body.front() == '[') {
            if (body.back() != ']') fail(no, first + body.size() + 1, {"]"}, "unterminated section header");
            std::string name(body.substr(1, body.size() - 2));
            if (name != "ring" && name != "lrs" && name != "primary_decomposition" && name != "options")
                fail(no, first + 1, {std::begin(kSections), std::end(kSections)}, "unknown section '" + name + "'");
            for (const auto& s : seen_sections_)
                if (s == name) fail(no, first + 1, {}, "duplicate section [" + name + "]");
            seen_sections_.push_back(name);
            section_ = name;
            return;
        }
        if (section_.empty()) fail(no, first + 1, {std::begin(kSections), std::end(kSections)}, "expected a section header");
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) fail(no, first + body.size() + 1, {"="}, "expected 'key = value'");
        std::string_view key = body.substr(0, eq);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
        std::string_view value = body.substr(eq + 1);
        std::size_t vcol = first + eq + 2;
        while (!value.empty() && (value.front() == ' ' || value.front() == '\t')) {
            value.remove_prefix(1);
            ++vcol;
        }
        Field f{no, vcol, std::string(value)};
        if (section_ == "primary_decomposition") {
            component(no, first + 1, key, f);
            return;
        }
        auto allowed = keys_of(section_);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(no, first + 1, allowed, "unknown key '" + std::string(key) + "' in [" + section_ + "]");
        std::string full = section_ + "." + std::string(key);
        for (const auto& [k, v] : fields_)
            if (k == full) fail(no, first + 1, {}, "duplicate key '" + std::string(key) + "'");
        fields_.emplace_back(full, std::move(f));
    }

    void component(std::size_t no, std::size_t col, std::string_view key, const Field& f) {
        DecompositionEntry e;
        if (key.substr(0, 9) != "component") fail(no, col, keys_of("primary_decomposition"), "expected a component");
        if (key.size() > 9) {
            if (key[9] != '@') fail(no, col + 9, {"=", "@"}, "unexpected text after 'component'");
            e.prime = number(key.substr(10), no, col + 10);
            if (!is_prime(*e.prime)) fail(no, col + 10, {"prime"}, "component tag is not a prime");
        }
        for (const auto& item : list(f)) e.generators.push_back(item.text);
        decomposition_.push_back({std::move(e), f});
    }

    static u64 number(std::string_view s, std::size_t line, std::size_t col) {
        u64 v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            fail(line, col, {"unsigned integer"}, "expected an unsigned 64-bit integer");
        return v;
    }

    static std::vector<ListItem> list(const Field& f) {
        std::vector<ListItem> out;
        if (f.value.empty()) return out;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = f.value.find(',', start);
            std::size_t end = comma == std::string::npos ? f.value.size() : comma;
            std::size_t a = start, b = end;
            while (a < b && (f.value[a] == ' ' || f.value[a] == '\t')) ++a;
            while (b > a && (f.value[b - 1] == ' ' || f.value[b - 1] == '\t')) --b;
            if (a == b) fail(f.line, f.column + a, {"list item"}, "empty list item");
            out.push_back({f.value.substr(a, b - a), f.column + a});
            if (comma == std::string::npos) return out;
            start = comma + 1;
        }
    }

    const Field* get(const std::string& key) const {
        for (const auto& [k, v] : fields_)
            if (k == key) return &v;
        return nullptr;
    }

    const Field& require(const std::string& key) const {
        if (const auto* f = get(key)) return *f;
        fail(eof_line_, 1, {key.substr(key.find('.') + 1)}, "missing required key '" + key + "'");
    }

    Problem finish();

    std::string_view text_;
    std::string section_;
    std::vector<std::string> seen_sections_;
    std::vector<std::pair<std::string, Field>> fields_;
    std::vector<std::pair<DecompositionEntry, Field>> decomposition_;
    std::size_t eof_line_ = 1;

public:
    std::pair<std::size_t, std::size_t> last_coefficient{1, 1};
};

} // namespace detail

namespace detail {

inline Problem ProblemParser::finish() {
    Problem P;
    const Field& tf = require("ring.characteristic");
    P.characteristic = number(tf.value, tf.line, tf.column);
    if (P.characteristic == 0)
        fail(tf.line, tf.column, {}, "characteristic zero is not supported: the Skolem problem over Z is open");
    if (P.characteristic == 1) fail(tf.line, tf.column, {}, "characteristic must be at least 2");
    for (auto [p, e] : factorize(P.characteristic))
        if (ipow(Integer(p), e) >= Integer(1) << 62)
            fail(tf.line, tf.column, {}, "prime-power part " + std::to_string(p) + "^" + std::to_string(e) +
                                             " exceeds 2^62");

    if (const auto* f = get("ring.variables"))
        for (const auto& item : list(*f)) {
            if (!is_identifier(item.text)) fail(f->line, item.column, {"identifier"}, "bad variable name");
            if (std::find(P.variables.begin(), P.variables.end(), item.text) != P.variables.end())
                fail(f->line, item.column, {}, "duplicate variable '" + item.text + "'");
            P.variables.push_back(item.text);
        }

    auto polys = [&](const Field& f) {
        std::vector<std::string> out;
        for (const auto& item : list(f)) {
            parse_poly(item.text, P.variables, P.characteristic, f.line, item.column);
            out.push_back(item.text);
        }
        return out;
    };
    if (const auto* f = get("ring.ideal")) P.ideal = polys(*f);
    const Field& cf = require("lrs.coefficients");
    const Field& inf = require("lrs.initial");
    P.coefficients = polys(cf);
    P.initial = polys(inf);
    if (P.coefficients.empty()) fail(cf.line, cf.column, {"polynomial"}, "recurrence order must be positive");
    if (P.initial.size() != P.coefficients.size())
        fail(inf.line, inf.column, {}, "expected " + std::to_string(P.coefficients.size()) + " initial terms, got " +
                                           std::to_string(P.initial.size()));

    for (auto& [entry, f] : decomposition_) {
        for (const auto& item : list(f)) parse_poly(item.text, P.variables, P.characteristic, f.line, item.column);
        if (entry.prime && P.characteristic % *entry.prime != 0)
            fail(f.line, 1, {}, "component tag " + std::to_string(*entry.prime) + " does not divide the characteristic");
        P.decomposition.push_back(std::move(entry));
    }

    if (const auto* f = get("options.bound")) P.options.bound = number(f->value, f->line, f->column);
    if (const auto* f = get("options.certify_bound")) P.options.certify_bound = number(f->value, f->line, f->column);
    if (const auto* f = get("options.backend")) {
        P.options.backend = parse_backend(f->value);
        if (!P.options.backend) fail(f->line, f->column, {"auto", "finite", "certify"}, "unknown backend");
    }
    last_coefficient = {cf.line, cf.column + cf.value.rfind(P.coefficients.back())};
    return P;
}

} // namespace detail

inline Presentation presentation(const Problem& P) {
    Presentation out{P.characteristic, P.variables, {}};
    for (const auto& g : P.ideal) out.ideal.push_back(parse_poly(g, P.variables, P.characteristic));
    return out;
}

/// The recurrence projected to every prime-power part of the characteristic.
inline std::vector<CrtComponent> components(const Problem& P, const GroebnerOptions& opts = {}) {
    std::vector<MultiPoly> a, g;
    for (const auto& s : P.coefficients) a.push_back(parse_poly(s, P.variables, P.characteristic));
    for (const auto& s : P.initial) g.push_back(parse_poly(s, P.variables, P.characteristic));
    return crt_split(presentation(P), a, g, opts);
}

/// Decomposition entries that apply to the p-part, or nullopt when none were given.
inline std::optional<UserDecomposition> decomposition_for(const Problem& P, u64 p) {
    UserDecomposition out;
    for (const auto& e : P.decomposition)
        if (!e.prime || *e.prime == p) out.push_back(e.generators);
    if (out.empty()) return std::nullopt;
    return out;
}

/// Parses and validates a problem file. Errors carry line and column.
inline Problem parse_problem(std::string_view text) {
    detail::ProblemParser parser(text);
    Problem P = parser.parse();
    bool trailing_zero = true;
    for (const auto& c : components(P))
        if (!c.lrs.coefficients().back().is_zero()) trailing_zero = false;
    if (trailing_zero)
        throw ParseError(parser.last_coefficient.first, parser.last_coefficient.second, {},
                         "trailing coefficient is zero");
    return P;
}

namespace detail {

inline std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

} // namespace detail

/// Canonical text of a problem; parse_problem(emit_problem(P)) == P.
inline std::string emit_problem(const Problem& P) {
    std::ostringstream out;
    out << "[ring]\ncharacteristic = " << P.characteristic << "\n";
    if (!P.variables.empty()) out << "variables = " << detail::join(P.variables) << "\n";
    if (!P.ideal.empty()) out << "ideal = " << detail::join(P.ideal) << "\n";
    out << "\n[lrs]\ncoefficients = " << detail::join(P.coefficients) << "\ninitial = " << detail::join(P.initial)
        << "\n";
    if (!P.decomposition.empty()) {
        out << "\n[primary_decomposition]\n";
        for (const auto& e : P.decomposition)
            out << "component" << (e.prime ? "@" + std::to_string(*e.prime) : "") << " = "
                << detail::join(e.generators) << "\n";
    }
    const auto& o = P.options;
    if (o.bound || o.certify_bound || o.backend) {
        out << "\n[options]\n";
        if (o.bound) out << "bound = " << *o.bound << "\n";
        if (o.certify_bound) out << "certify_bound = " << *o.certify_bound << "\n";
        if (o.backend) out << "backend = " << backend_name(*o.backend) << "\n";
    }
    return out.str();
}

} // namespace skolem
