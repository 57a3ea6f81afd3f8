// Copyright (c) 2026 flowlab contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace flowlab {

// Doubles are serialized with 17 significant digits so text round-trips are
// exact; absent values serialize as empty cells.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);
double parse_double(const std::string& text);  // throws Error(parse)

// Minimal comma-separated table: a header row plus homogeneous data rows.
// Fields never contain commas or quotes in this project's schemas.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read_file(const std::filesystem::path& path);
    static CsvTable parse(const std::string& text, const std::string& source_name);

    void write_file(const std::filesystem::path& path) const;
    std::string to_string() const;

    // Throws Error(parse) naming the column when it is missing.
    std::size_t column_index(const std::string& name) const;
};

}  // namespace flowlab
