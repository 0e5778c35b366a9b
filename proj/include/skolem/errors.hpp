#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by every stage of the decision pipeline.
 *
 * Each type carries a short machine-readable reason code; the driver turns
 * caught exceptions into UNKNOWN_BOUNDED verdicts using that code.
 */

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skolem {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error("invalid_input", what) {}
};

class ResourceExhausted : public Error {
public:
    explicit ResourceExhausted(const std::string& what) : Error("resource_exhausted", what) {}
};

class UnsupportedDecomposition : public Error {
public:
    explicit UnsupportedDecomposition(const std::string& what)
        : Error("unsupported_decomposition", what) {}
};

class NilpotencyUndetermined : public Error {
public:
    explicit NilpotencyUndetermined(const std::string& what)
        : Error("nilpotency_undetermined", what) {}
};

class ZeroDivisorUnknown : public Error {
public:
    explicit ZeroDivisorUnknown(const std::string& what)
        : Error("zero_divisor_unknown", what) {}
};

class FactorizationFailed : public Error {
public:
    explicit FactorizationFailed(const std::string& what)
        : Error("factorization_failed", what) {}
};

/// Parse failure with a 1-based position and the set of tokens that would have been accepted.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
               const std::string& message)
        : Error("parse_error", format(line, column, expected, message)),
          line_(line), column_(column), expected_(std::move(expected)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(std::size_t line, std::size_t column,
                              const std::vector<std::string>& expected,
                              const std::string& message) {
        std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        if (!expected.empty()) {
            s += " (expected one of:";
            for (const auto& e : expected) s += " " + e;
            s += ")";
        }
        return s;
    }

    std::size_t line_;
    std::size_t column_;
    std::vector<std::string> expected_;
};

} // namespace skolem
