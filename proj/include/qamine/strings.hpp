// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qamine {

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

std::string_view trim(std::string_view s);

/// Trims and collapses internal whitespace runs to one space.
std::string normalize_whitespace(std::string_view s);

/// normalize_whitespace + ASCII lowercase.
std::string normalize_label(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with_icase(std::string_view s, std::string_view prefix);

/// Strict integer parse of the whole string.
bool parse_int(std::string_view s, long long& out);

/// Stable ordering for record ids: all-digit ids compare numerically and sort
/// before any other id, the rest compare lexicographically.
struct IdLess {
  bool operator()(std::string_view a, std::string_view b) const;
  using is_transparent = void;
};

/// Reads a word list: one entry per line, '#' starts a comment, blank lines
/// ignored, entries lowercased.
std::vector<std::string> read_word_list(const std::string& path);

}  // namespace qamine
