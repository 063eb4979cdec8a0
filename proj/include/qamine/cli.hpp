// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qamine/error.hpp"
#include "qamine/lda.hpp"
#include "qamine/records.hpp"
#include "qamine/tag_filter.hpp"
#include "qamine/topic_analysis.hpp"

namespace qamine::cli {

namespace fs = std::filesystem;

/// Thrown for bad flag combinations and missing inputs; run() maps it to
/// exit status 2.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error("usage", message) {}
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `qamine <version> <artifact> config=<json>`; used as the first comment
/// line of every report.
std::string report_header(std::string_view artifact, const nlohmann::json& config);

struct IngestDumpOptions {
  fs::path store;
  fs::path posts;
  std::optional<fs::path> tags;
  bool keep_body = true;
};
void ingest_dump(const IngestDumpOptions& o, std::ostream& log);

struct IngestForumOptions {
  fs::path store;
  fs::path archive;
  std::vector<std::string> technological;
};
void ingest_forum(const IngestForumOptions& o, std::ostream& log);

struct FilterOptions {
  fs::path store;
  tags::FilterConfig config;
  fs::path out;
  std::optional<fs::path> tagstats;
};
void filter(const FilterOptions& o, std::ostream& log);

struct StatsOptions {
  fs::path store;
  Source source = Source::StackExchangeDump;
  bool technological_only = false;
  std::optional<fs::path> question_set;
  bool json = false;
  std::optional<fs::path> out;
};
/// Returns the rendered report (also written to `out` when set).
std::string stats(const StatsOptions& o);

struct PrepOptions {
  fs::path store;
  Source source = Source::StackExchangeDump;
  /// Without a question set, every question of the source is used (forum:
  /// technological forums only).
  std::optional<fs::path> question_set;
  std::optional<fs::path> stoplist;
  std::optional<fs::path> protected_words;
  fs::path out;
};
void prep(const PrepOptions& o, std::ostream& log);

struct TrainCommandOptions {
  fs::path documents;
  fs::path out;
  lda::LdaConfig config;
  std::optional<std::string> kernel;
};
void train(const TrainCommandOptions& o, std::ostream& log);

struct ReportOptions {
  fs::path model;
  std::optional<fs::path> labels;
  std::size_t top_n = 20;
  fs::path out_dir;
};
void report(const ReportOptions& o, std::ostream& log);

struct MatchCommandOptions {
  fs::path left;
  std::optional<fs::path> left_labels;
  std::optional<fs::path> right;
  std::optional<fs::path> right_external;
  std::optional<fs::path> right_labels;
  analysis::MatchOptions match;
  fs::path out;
  /// Writes a draft decisions file unless one already exists there.
  std::optional<fs::path> decisions_out;
  /// Summarizes an analyst-edited decisions file.
  std::optional<fs::path> decisions;
  std::optional<fs::path> summary_out;
};
void match(const MatchCommandOptions& o, std::ostream& log);

struct RelevantOptions {
  fs::path store;
  Source source = Source::StackExchangeDump;
  fs::path model;
  /// Unset means every topic.
  std::optional<std::size_t> topic;
  analysis::RelevanceOptions relevance;
  fs::path out;
};
void relevant(const RelevantOptions& o, std::ostream& log);

/// Declarative run; see docs/pipeline.md for the file format.
struct PipelineConfig {
  fs::path store_dir;
  fs::path out_dir;
  std::optional<fs::path> dump_posts;
  std::optional<fs::path> dump_tags;
  std::optional<fs::path> forum_archive;
  std::vector<std::string> technological_forums;
  tags::FilterConfig filter;
  std::optional<fs::path> stoplist;
  std::optional<fs::path> protected_words;
  lda::LdaConfig lda;
  std::size_t top_n = 20;
  std::optional<fs::path> dump_labels;
  std::optional<fs::path> forum_labels;
  std::optional<fs::path> reference_topics;
  analysis::MatchOptions match;
  analysis::RelevanceOptions relevance;

  /// Relative paths resolve against `base_dir`.
  static PipelineConfig from_json(const nlohmann::json& j, const fs::path& base_dir);
  nlohmann::json to_json() const;
  /// Throws UsageError when a referenced input does not exist.
  void validate() const;
};

/// Runs every stage whose inputs changed or whose outputs are missing;
/// `force` reruns all of them.
void pipeline(const PipelineConfig& config, bool force, std::ostream& log);

}  // namespace qamine::cli
