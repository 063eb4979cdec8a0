// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qamine/records.hpp"
#include "qamine/tag_filter.hpp"
#include "qamine/text_prep.hpp"

namespace qamine::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

PostRecord question(std::string id, std::vector<std::string> tags, std::string title = "q",
                    std::int64_t views = 0, std::optional<std::int64_t> score = 0);
PostRecord answer(std::string id, std::string parent, bool accepted = false);

/// Owns titles and tag lists so QuestionRef views stay valid.
struct TagCorpus {
  std::vector<std::string> ids;
  std::vector<std::string> titles;
  std::vector<std::vector<std::string>> tags;

  void add(std::vector<std::string> tag_list, std::size_t copies = 1, const std::string& title = "untitled");
  std::vector<tags::QuestionRef> refs() const;
};

/// One row of the published tag table: how many questions carry the tag
/// and how many of those also carry a tag containing "xamarin".
struct TableRow {
  const char* tag;
  std::int64_t occ_all;
  std::int64_t occ_dom;
  bool initial;
};

/// The rows shown in the published table plus an "android"-like tag whose
/// relevance (107 of 10000) falls below the threshold.
const std::vector<TableRow>& table_rows();

/// Questions reproducing table_rows() exactly: every initial tag except
/// "xamarin" appears alone, in-domain occurrences of other tags are
/// co-tagged with "xamarin", and out-of-domain ones appear alone. The
/// "xamarin" tag ends with exactly its published count.
TagCorpus table_corpus();

/// Two clusters with disjoint vocabularies of `words_per_cluster` words.
/// Document i belongs to cluster i % 2.
std::vector<text::Document> two_cluster_corpus(std::size_t docs, std::size_t words_per_cluster,
                                               std::size_t doc_length, std::uint64_t seed);

/// Random documents over a Zipf-ish vocabulary of `vocab` words.
std::vector<text::Document> random_corpus(std::size_t docs, std::size_t vocab, std::size_t min_len,
                                          std::size_t max_len, std::uint64_t seed);

}  // namespace qamine::testing
