// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qamine/records.hpp"
#include "qamine/strings.hpp"

namespace qamine {

/// Per-kind counts of a put_records call. `ignored` is filled by ingesters
/// for input rows that are not records at all (wiki rows and the like).
struct IngestSummary {
  std::size_t questions = 0;
  std::size_t answers = 0;
  std::size_t forums = 0;
  std::size_t comments = 0;
  std::size_t users = 0;
  std::size_t rejected = 0;
  std::size_t ignored = 0;
  std::vector<std::string> diagnostics;

  IngestSummary& operator+=(const IngestSummary& other);
  std::string to_text() const;
};

struct CorpusStats {
  std::int64_t question_count = 0;
  std::int64_t answered_count = 0;
  std::int64_t accepted_count = 0;
  std::int64_t answered_not_accepted_count = 0;
  std::int64_t unanswered_count = 0;
  std::int64_t answer_count = 0;
  double avg_answers_per_question = 0.0;
  std::int64_t total_views = 0;
  double avg_views_per_question = 0.0;
  std::int64_t technological_count = 0;
  std::int64_t non_technological_count = 0;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;

  /// Flat `key = value` lines.
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Selects which questions compute_stats looks at.
struct StatsQuery {
  Source source = Source::StackExchangeDump;
  bool technological_only = false;
  /// When set, only questions whose id is in the set are counted.
  const std::unordered_set<std::string>* question_ids = nullptr;
};

/// Normalized posts, forums, comments and users from both sources, persisted
/// as one line-delimited JSON file per entity kind.
///
/// Duplicate keys are replaced by the last write. Files are rewritten in key
/// order on save, so identical content always yields identical bytes.
class CorpusStore {
 public:
  using PostKey = std::pair<Source, std::string>;

  struct PostKeyLess {
    bool operator()(const PostKey& a, const PostKey& b) const {
      if (a.first != b.first) return a.first < b.first;
      return IdLess{}(a.second, b.second);
    }
  };

  CorpusStore() = default;

  /// Opens (and creates if needed) a store directory, loading any records
  /// already persisted there.
  static CorpusStore open(const std::filesystem::path& dir);

  /// Loads an existing store; throws if the directory does not exist.
  static CorpusStore open_existing(const std::filesystem::path& dir);

  /// Validates and merges records. Questions, forums and users are applied
  /// before answers, and answers before comments, so references may point
  /// forward within one batch.
  IngestSummary put_records(std::vector<Record> records);

  /// Sets ForumRecord::technological from a name list. Returns one warning
  /// per configured name that matches no forum.
  std::vector<std::string> classify_forums(const std::set<std::string>& technological_names);

  CorpusStats compute_stats(const StatsQuery& query) const;

  /// Writes the four record files. No-op for a store without a directory.
  void save() const;

  const std::filesystem::path& dir() const { return dir_; }

  const PostRecord* find_post(Source source, const std::string& id) const;
  const ForumRecord* find_forum(const std::string& id) const;

  /// Questions of one source in id order.
  std::vector<const PostRecord*> questions(Source source) const;

  const std::map<PostKey, PostRecord, PostKeyLess>& posts() const { return posts_; }
  const std::map<std::string, ForumRecord, IdLess>& forums() const { return forums_; }
  const std::map<std::string, CommentRecord, IdLess>& comments() const { return comments_; }
  const std::map<std::string, UserRecord, IdLess>& users() const { return users_; }

  friend bool operator==(const CorpusStore& a, const CorpusStore& b) {
    return a.posts_ == b.posts_ && a.forums_ == b.forums_ && a.comments_ == b.comments_ &&
           a.users_ == b.users_;
  }

 private:
  void load();

  std::filesystem::path dir_;
  std::map<PostKey, PostRecord, PostKeyLess> posts_;
  std::map<std::string, ForumRecord, IdLess> forums_;
  std::map<std::string, CommentRecord, IdLess> comments_;
  std::map<std::string, UserRecord, IdLess> users_;
};

}  // namespace qamine
