// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qamine/corpus_store.hpp"
#include "qamine/error.hpp"
#include "qamine/records.hpp"

namespace qamine::forum {

enum class PageKind : std::uint8_t { Index, Thread };

/// A locally archived forum page. The kind is detected from markup.
struct ArchivedPage {
  std::filesystem::path path;
  PageKind kind = PageKind::Index;
  std::string raw;

  /// Throws PageError if the markup is neither an index nor a thread page.
  static ArchivedPage from_html(std::filesystem::path path, std::string raw);
  static ArchivedPage load(const std::filesystem::path& path);
};

/// Markup the parser does not recognize. `region` is an excerpt of the first
/// unmatched part of the page.
class PageError : public Error {
 public:
  PageError(const std::string& message, std::string region);
  const std::string& region() const noexcept { return region_; }

 private:
  std::string region_;
};

struct ThreadStub {
  std::string id;
  std::string title;
  std::int64_t view_count = 0;
  std::int64_t answer_count = 0;
  std::vector<std::string> labels;  // verbatim, page order
  std::optional<std::string> forum_id;
};

struct ParsedThread {
  PostRecord question;
  std::vector<PostRecord> answers;
  std::vector<CommentRecord> comments;
  std::vector<UserRecord> users;
  /// Views shown on the thread page itself, when present.
  std::optional<std::int64_t> page_views;
};

/// "1.2K" -> 1200, "3M" -> 3000000, "1,234" -> 1234. Throws on garbage.
std::int64_t parse_view_count(std::string_view text);

std::vector<ThreadStub> parse_index_page(const ArchivedPage& page);
ParsedThread parse_thread_page(const ArchivedPage& page);

struct ImportReport {
  IngestSummary summary;
  std::size_t pages = 0;
  std::size_t index_pages = 0;
  std::size_t thread_pages = 0;
  std::size_t skipped_pages = 0;
  std::size_t view_conflicts = 0;
  std::size_t answer_count_mismatches = 0;
  std::vector<std::string> diagnostics;

  std::string to_text() const;
};

/// Reads `forums.tsv` (id, name, optional parent name; tab separated) and
/// every *.html file below `dir`, in path order, and stores the result.
ImportReport import_archive(const std::filesystem::path& dir, CorpusStore& store);

}  // namespace qamine::forum
