// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qamine/error.hpp"
#include "qamine/records.hpp"

namespace qamine::dump {

/// Malformed XML. `offset` is the byte position reported by the parser.
class DumpError : public Error {
 public:
  DumpError(const std::string& message, std::uint64_t offset);
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

/// Attributes of one `<row .../>` element, in document order. Views are only
/// valid for the duration of the callback.
class DumpRow {
 public:
  explicit DumpRow(const char** attrs) : attrs_(attrs) {}
  /// Value of an attribute, or nullptr when absent.
  const char* get(std::string_view name) const;

 private:
  const char** attrs_;
};

struct ParseReport {
  std::size_t rows = 0;
  std::size_t questions = 0;
  std::size_t answers = 0;
  std::size_t tags = 0;
  /// Rows that are neither questions nor answers (wiki, moderator rows...).
  std::size_t ignored = 0;
  /// Rows missing a required attribute.
  std::size_t skipped = 0;
  /// First few skip reasons; the count above is exact.
  std::vector<std::string> diagnostics;
};

struct ParseOptions {
  bool keep_body = true;
};

using PostSink = std::function<void(PostRecord&&)>;
using TagSink = std::function<void(std::string&& name, std::int64_t count)>;

/// Streams every element named "row" to `visit`. Memory use does not depend
/// on file size. Throws DumpError on malformed XML.
void for_each_row(const std::filesystem::path& path, const std::function<void(const DumpRow&)>& visit);

/// Splits a dump tag string. Accepts "<a><b>" and "|a|b|"; the result is
/// lowercased and deduplicated.
std::vector<std::string> parse_tag_string(std::string_view text);

/// Two passes over Posts.xml: the first indexes accepted answer ids, the
/// second emits questions and answers with resolved `accepted` flags.
ParseReport parse_posts(const std::filesystem::path& path, const PostSink& sink,
                        const ParseOptions& options = {});

/// Tags.xml: (TagName, Count) per row, duplicates passed through.
ParseReport parse_tags(const std::filesystem::path& path, const TagSink& sink);

}  // namespace qamine::dump
