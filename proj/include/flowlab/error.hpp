// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace flowlab {

// All recoverable failures carry a stable kind tag; the CLI prints the tag in
// its single-line error output and maps it to exit code 1.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace errkind {
inline constexpr const char* invalid_argument = "invalid-argument";
inline constexpr const char* numeric = "numeric";
inline constexpr const char* insufficient_samples = "insufficient-samples";
inline constexpr const char* unknown_condition = "unknown-condition";
inline constexpr const char* parse = "parse";
inline constexpr const char* out_of_domain = "out-of-domain";
inline constexpr const char* undefined_angle = "undefined-angle";
inline constexpr const char* undefined_projection = "undefined-projection";
inline constexpr const char* undefined_direction = "undefined-direction";
inline constexpr const char* undefined_axis = "undefined-axis";
inline constexpr const char* degenerate_triplet = "degenerate-triplet";
inline constexpr const char* aborted_run = "aborted-run";
inline constexpr const char* internal = "internal";
inline constexpr const char* io = "io";
}  // namespace errkind

// Text-format errors report the 1-based line and column of the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& source, int line, int column, const std::string& message)
        : Error(errkind::parse,
                source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace flowlab
