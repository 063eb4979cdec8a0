// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qamine/timestamp.hpp"

namespace qamine {

enum class Source : std::uint8_t { StackExchangeDump, ForumArchive };
enum class PostKind : std::uint8_t { Question, Answer };

/// "dump" / "forum".
std::string_view to_string(Source source);
Source parse_source(std::string_view text);

/// One question or answer. Forum discussions are stored as questions.
struct PostRecord {
  std::string id;
  Source source = Source::StackExchangeDump;
  PostKind kind = PostKind::Question;
  std::optional<std::string> parent_id;
  std::string title;
  std::string body;
  std::vector<std::string> tags;
  Timestamp creation_date{};
  std::int64_t view_count = 0;
  std::optional<std::int64_t> score;
  bool accepted = false;
  std::optional<std::string> forum_id;
  std::optional<std::string> author_id;

  bool is_question() const { return kind == PostKind::Question; }
  friend bool operator==(const PostRecord&, const PostRecord&) = default;
};

struct ForumRecord {
  std::string id;
  std::string name;
  std::optional<std::string> parent_name;
  bool technological = false;
  friend bool operator==(const ForumRecord&, const ForumRecord&) = default;
};

struct CommentRecord {
  std::string id;
  std::string post_id;
  std::optional<std::string> author_id;
  Timestamp date{};
  std::vector<std::string> labels;  // sorted, unique
  friend bool operator==(const CommentRecord&, const CommentRecord&) = default;
};

struct UserRecord {
  std::string id;
  std::string name;
  std::vector<std::string> roles;  // sorted, unique, never empty
  friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

using Record = std::variant<PostRecord, ForumRecord, CommentRecord, UserRecord>;

inline constexpr std::string_view kDefaultRole = "Member";

/// Lowercases, deduplicates (first occurrence wins) and drops empty tags.
std::vector<std::string> normalize_tags(const std::vector<std::string>& tags);

/// Sorts and deduplicates a text set in place.
void normalize_set(std::vector<std::string>& values);

/// Normalizes tags/labels/roles in place, then checks the per-record
/// invariants that do not need other records. Returns an empty string when
/// valid, otherwise the reason.
std::string normalize_and_validate(PostRecord& post);
std::string normalize_and_validate(ForumRecord& forum);
std::string normalize_and_validate(CommentRecord& comment);
std::string normalize_and_validate(UserRecord& user);

nlohmann::json to_json(const Record& record);
/// Inverse of to_json; dispatches on the "type" member.
Record record_from_json(const nlohmann::json& j);

}  // namespace qamine
