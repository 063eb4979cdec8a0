// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/records.hpp"

#include <algorithm>
#include <unordered_set>

#include "qamine/error.hpp"
#include "qamine/strings.hpp"

namespace qamine {

using nlohmann::json;

std::string_view to_string(Source source) {
  return source == Source::StackExchangeDump ? "dump" : "forum";
}

Source parse_source(std::string_view text) {
  if (text == "dump" || text == "so" || text == "stackexchange") return Source::StackExchangeDump;
  if (text == "forum" || text == "xam") return Source::ForumArchive;
  throw InvalidArgument("unknown source '" + std::string(text) + "' (expected dump|forum)");
}

std::vector<std::string> normalize_tags(const std::vector<std::string>& tags) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& raw : tags) {
    auto tag = to_lower(trim(raw));
    if (tag.empty() || !seen.insert(tag).second) continue;
    out.push_back(std::move(tag));
  }
  return out;
}

void normalize_set(std::vector<std::string>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

std::string normalize_and_validate(PostRecord& post) {
  post.tags = normalize_tags(post.tags);
  if (post.id.empty()) return "post without id";
  if (post.view_count < 0) return "negative view count on post " + post.id;
  if (post.kind == PostKind::Answer) {
    if (!post.parent_id || post.parent_id->empty()) return "answer " + post.id + " without parent id";
  } else {
    if (trim(post.title).empty()) return "question " + post.id + " with empty title";
    if (post.accepted) return "question " + post.id + " flagged accepted";
  }
  if (post.source == Source::ForumArchive && post.score) {
    return "forum post " + post.id + " carries a score";
  }
  if (post.source == Source::StackExchangeDump && post.forum_id) {
    return "dump post " + post.id + " carries a forum id";
  }
  return {};
}

std::string normalize_and_validate(ForumRecord& forum) {
  if (forum.id.empty()) return "forum without id";
  if (trim(forum.name).empty()) return "forum " + forum.id + " without name";
  return {};
}

std::string normalize_and_validate(CommentRecord& comment) {
  normalize_set(comment.labels);
  if (comment.id.empty()) return "comment without id";
  if (comment.post_id.empty()) return "comment " + comment.id + " without post id";
  return {};
}

std::string normalize_and_validate(UserRecord& user) {
  if (user.roles.empty()) user.roles.emplace_back(kDefaultRole);
  normalize_set(user.roles);
  if (user.id.empty()) return "user without id";
  return {};
}

namespace {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_optional(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

Timestamp get_time(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return {};
  auto ts = parse_timestamp(it->get<std::string>());
  if (!ts) throw Error("parse", std::string("bad timestamp in field ") + key);
  return *ts;
}

}  // namespace

json to_json(const Record& record) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        json j;
        if constexpr (std::is_same_v<T, PostRecord>) {
          j["type"] = "post";
          j["source"] = to_string(r.source);
          j["kind"] = r.kind == PostKind::Question ? "question" : "answer";
          j["id"] = r.id;
          put_optional(j, "parent_id", r.parent_id);
          if (r.kind == PostKind::Question) j["title"] = r.title;
          j["body"] = r.body;
          j["tags"] = r.tags;
          j["creation_date"] = format_timestamp(r.creation_date);
          j["view_count"] = r.view_count;
          put_optional(j, "score", r.score);
          j["accepted"] = r.accepted;
          put_optional(j, "forum_id", r.forum_id);
          put_optional(j, "author_id", r.author_id);
        } else if constexpr (std::is_same_v<T, ForumRecord>) {
          j["type"] = "forum";
          j["id"] = r.id;
          j["name"] = r.name;
          put_optional(j, "parent_name", r.parent_name);
          j["technological"] = r.technological;
        } else if constexpr (std::is_same_v<T, CommentRecord>) {
          j["type"] = "comment";
          j["id"] = r.id;
          j["post_id"] = r.post_id;
          put_optional(j, "author_id", r.author_id);
          j["date"] = format_timestamp(r.date);
          j["labels"] = r.labels;
        } else {
          j["type"] = "user";
          j["id"] = r.id;
          j["name"] = r.name;
          j["roles"] = r.roles;
        }
        return j;
      },
      record);
}

Record record_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "post") {
    PostRecord p;
    p.source = parse_source(j.at("source").get<std::string>());
    p.kind = j.at("kind").get<std::string>() == "answer" ? PostKind::Answer : PostKind::Question;
    p.id = j.at("id").get<std::string>();
    p.parent_id = get_optional<std::string>(j, "parent_id");
    p.title = j.value("title", "");
    p.body = j.value("body", "");
    p.tags = j.value("tags", std::vector<std::string>{});
    p.creation_date = get_time(j, "creation_date");
    p.view_count = j.value("view_count", std::int64_t{0});
    p.score = get_optional<std::int64_t>(j, "score");
    p.accepted = j.value("accepted", false);
    p.forum_id = get_optional<std::string>(j, "forum_id");
    p.author_id = get_optional<std::string>(j, "author_id");
    return p;
  }
  if (type == "forum") {
    ForumRecord f;
    f.id = j.at("id").get<std::string>();
    f.name = j.at("name").get<std::string>();
    f.parent_name = get_optional<std::string>(j, "parent_name");
    f.technological = j.value("technological", false);
    return f;
  }
  if (type == "comment") {
    CommentRecord c;
    c.id = j.at("id").get<std::string>();
    c.post_id = j.at("post_id").get<std::string>();
    c.author_id = get_optional<std::string>(j, "author_id");
    c.date = get_time(j, "date");
    c.labels = j.value("labels", std::vector<std::string>{});
    return c;
  }
  if (type == "user") {
    UserRecord u;
    u.id = j.at("id").get<std::string>();
    u.name = j.value("name", "");
    u.roles = j.value("roles", std::vector<std::string>{});
    return u;
  }
  throw Error("parse", "unknown record type '" + type + "'");
}

}  // namespace qamine
