// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qamine/records.hpp"

namespace qamine::tags {

/// Per-tag co-occurrence counts over questions.
///   trt = occ_dom / occ_all                 (how specific the tag is)
///   tst = occ_dom / max over tags of occ_dom (how common it is in-domain)
struct TagStats {
  std::string tag;
  std::int64_t occ_all = 0;  // questions carrying the tag
  std::int64_t occ_dom = 0;  // ...that also carry an initial-set tag
  double trt = 0.0;
  double tst = 0.0;
  friend bool operator==(const TagStats&, const TagStats&) = default;
};

struct FilterConfig {
  /// Case-insensitive. Plain text is a substring match; '%' is a SQL LIKE
  /// wildcard ("%xamarin%" and "xamarin" select the same tags).
  std::string initial_pattern = "xamarin";
  double trt_min = 0.25;
  double tst_min = 0.001;

  /// Throws InvalidArgument unless 0 < trt_min <= 1 and 0 < tst_min <= 1.
  void validate() const;
  nlohmann::json to_json() const;
};

using TagSet = std::set<std::string>;

/// Minimal view of a question used by the filters.
struct QuestionRef {
  std::string_view id;
  std::string_view title;
  const std::vector<std::string>* tags = nullptr;
};

std::vector<QuestionRef> question_refs(const std::vector<const PostRecord*>& questions);

bool pattern_matches(std::string_view pattern, std::string_view tag);

/// Every tag matching the pattern. Throws if the result is empty.
TagSet expand_initial_tags(const FilterConfig& config, const TagSet& all_tags);

TagSet all_tags(const std::vector<QuestionRef>& questions);

/// One TagStats per tag appearing on at least one question that carries an
/// initial tag. Sorted by occ_dom descending, then tag name.
std::vector<TagStats> compute_tag_stats(const std::vector<QuestionRef>& questions, const TagSet& initial);

/// initial ∪ {t : trt >= trt_min and tst >= tst_min}; thresholds inclusive.
TagSet select_final_tags(const std::vector<TagStats>& stats, const TagSet& initial, const FilterConfig& config);

/// Question ids carrying at least one final tag, in input order.
std::vector<std::string> filter_by_tags(const std::vector<QuestionRef>& questions, const TagSet& final_tags);

/// True when `title` contains the keyword derived from `tag`: case-insensitive
/// substring match where each '.' or '-' in the tag may match itself, a space,
/// or nothing ("xamarin.forms" matches "Xamarin Forms" and "XamarinForms").
bool title_matches_keyword(std::string_view title, std::string_view tag);

/// Questions not in `already` whose title matches a keyword of a final tag.
std::vector<std::string> filter_by_keywords(const std::vector<QuestionRef>& questions, const TagSet& final_tags,
                                            const std::set<std::string>& already);

enum class Provenance : std::uint8_t { TagMatched, KeywordMatched };
std::string_view to_string(Provenance p);

struct QuestionSet {
  struct Entry {
    std::string id;
    Provenance provenance = Provenance::TagMatched;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  FilterConfig config;
  TagSet initial_tags;
  TagSet final_tags;
  std::vector<TagStats> tag_stats;
  std::vector<Entry> entries;

  /// Tag-matched questions carrying an initial tag, and those matched only
  /// through the remaining final tags.
  std::size_t initial_tagged = 0;
  std::size_t other_final_tagged = 0;

  std::size_t tag_matched() const { return initial_tagged + other_final_tagged; }
  std::size_t keyword_matched() const { return entries.size() - tag_matched(); }
  std::set<std::string> ids() const;
};

/// Full snowball: initial tags -> stats -> final tags -> tag filter ->
/// keyword fallback.
QuestionSet build_question_set(const std::vector<QuestionRef>& questions, const FilterConfig& config);

/// NDJSON: one meta line (config, tag sets, counts) then one line per
/// question {"id", "provenance"}.
std::string question_set_to_ndjson(const QuestionSet& set, const nlohmann::json& extra_meta = {});
QuestionSet question_set_from_ndjson(std::string_view text);
QuestionSet read_question_set(const std::filesystem::path& path);

/// CSV with one row per tag: tag, occ_all, occ_dom, trt_pct, tst_pct.
std::string tag_stats_to_csv(const std::vector<TagStats>& stats, std::string_view header_comment);

}  // namespace qamine::tags
