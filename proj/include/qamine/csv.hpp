// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qamine::csv {

using Row = std::vector<std::string>;

/// Quotes a field when it contains a comma, quote or line break, or starts
/// with '#' (which would otherwise read back as a comment line).
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& row);

/// Parses RFC 4180 style CSV. Lines starting with '#' outside of a quoted
/// field are treated as comments and skipped; the first remaining row is the
/// header and is returned as-is (callers check column names).
std::vector<Row> parse(std::string_view text);

std::vector<Row> read_file(const std::string& path);

/// Index of a header column, or -1.
int column(const Row& header, std::string_view name);

}  // namespace qamine::csv
