// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qamine/corpus_store.hpp"
#include "qamine/lda.hpp"

namespace qamine::analysis {

/// Human-assigned topic labels for one model run. CSV: topic_id,label.
struct LabelFile {
  std::string source;
  std::map<std::size_t, std::string> labels;
};

LabelFile parse_label_csv(std::string_view text, std::string source = {});
LabelFile read_label_file(const std::filesystem::path& path, std::string source = {});

struct LabeledSummaries {
  std::vector<lda::TopicSummary> summaries;
  /// Topic ids left without a label, ascending.
  std::vector<std::size_t> unlabeled;
};

/// Throws InvalidArgument naming every label id that is not a topic.
LabeledSummaries apply_labels(std::vector<lda::TopicSummary> summaries, const LabelFile& labels);

/// A topic as seen by the matcher: either side may come from a trained
/// model or from a transcribed table.
struct MatchTopic {
  std::string id;
  std::optional<std::string> label;
  std::vector<std::pair<std::string, std::optional<double>>> words;
};

std::vector<MatchTopic> to_match_topics(const std::vector<lda::TopicSummary>& summaries);

/// Transcribed reference topics. CSV: id,label,word[,probability], one row
/// per word; label may be repeated or only given on the first row.
struct ExternalTopicSet {
  std::vector<MatchTopic> topics;
};

ExternalTopicSet parse_external_topics(std::string_view text);
ExternalTopicSet read_external_topics(const std::filesystem::path& path);

enum class MatchKind : std::uint8_t { LabelEquality, WordOverlap };
std::string_view to_string(MatchKind kind);

struct TopicMatch {
  std::string left_id;
  std::string right_id;
  MatchKind matched_by = MatchKind::LabelEquality;
  double score = 0.0;
  std::vector<std::string> shared_words;
  friend bool operator==(const TopicMatch&, const TopicMatch&) = default;
};

struct MatchOptions {
  std::size_t top_m = 20;
  std::size_t min_shared = 3;
};

/// Label matches first (score 1), then word-overlap candidates by score
/// descending. A pair is scored by the sum over shared words of the smaller
/// of the two probabilities when both sides carry them, otherwise by
/// shared / top_m. Ties are ordered by left id, then right id.
std::vector<TopicMatch> match_topics(const std::vector<MatchTopic>& left, const std::vector<MatchTopic>& right,
                                     const MatchOptions& options = {});

std::string matches_csv(const std::vector<TopicMatch>& matches, std::string_view header_comment);

enum class Verdict : std::uint8_t { Accept, Reject };

struct Decision {
  std::string left_id;
  std::string right_id;
  Verdict verdict = Verdict::Reject;
  std::string note;
  friend bool operator==(const Decision&, const Decision&) = default;
};

/// Starting point for the analyst: label matches pre-accepted, overlap
/// candidates pre-rejected with a note asking for review.
std::vector<Decision> draft_decisions(const std::vector<TopicMatch>& matches);

/// CSV: left_id,right_id,verdict,note with verdict accept|reject.
std::string decisions_csv(const std::vector<Decision>& decisions);
std::vector<Decision> parse_decisions(std::string_view text);
std::vector<Decision> read_decisions(const std::filesystem::path& path);

struct MatchSummary {
  std::size_t accepted_pairs = 0;
  std::size_t left_total = 0;
  std::size_t right_total = 0;
  std::size_t left_matched = 0;
  std::size_t right_matched = 0;
  std::size_t left_only = 0;
  std::size_t right_only = 0;

  double left_coverage() const;
  double right_coverage() const;
  std::string to_text() const;
};

/// Totals default to the number of distinct ids seen in the decisions.
MatchSummary match_summary(const std::vector<Decision>& decisions, std::optional<std::size_t> left_total = {},
                           std::optional<std::size_t> right_total = {});

struct RelevanceOptions {
  std::int64_t min_views = 10000;
  std::int64_t min_score = 10;
};

struct RelevantQuestion {
  std::string id;
  std::string title;
  std::int64_t views = 0;
  std::optional<std::int64_t> score;
  friend bool operator==(const RelevantQuestion&, const RelevantQuestion&) = default;
};

/// Questions whose dominant topic is `topic` with views >= min_views and,
/// when a score exists, score >= min_score. Sorted by views descending,
/// score descending (absent last), then id.
std::vector<RelevantQuestion> relevant_questions(const lda::TopicModel& model, const CorpusStore& store,
                                                 Source source, std::size_t topic,
                                                 const RelevanceOptions& options = {});

std::string relevant_csv(const std::vector<RelevantQuestion>& questions, std::size_t topic,
                         std::string_view header_comment);

}  // namespace qamine::analysis
