// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/corpus_store.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "qamine/error.hpp"
#include "qamine/io.hpp"

namespace qamine {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kPostsFile = "posts.ndjson";
constexpr const char* kForumsFile = "forums.ndjson";
constexpr const char* kCommentsFile = "comments.ndjson";
constexpr const char* kUsersFile = "users.ndjson";

template <class Map>
std::string dump_lines(const Map& map) {
  std::string out;
  for (const auto& [key, value] : map) {
    out += to_json(Record{value}).dump();
    out.push_back('\n');
  }
  return out;
}

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

IngestSummary& IngestSummary::operator+=(const IngestSummary& other) {
  questions += other.questions;
  answers += other.answers;
  forums += other.forums;
  comments += other.comments;
  users += other.users;
  rejected += other.rejected;
  ignored += other.ignored;
  diagnostics.insert(diagnostics.end(), other.diagnostics.begin(), other.diagnostics.end());
  return *this;
}

std::string IngestSummary::to_text() const {
  return fmt::format(
      "questions = {}\nanswers = {}\nforums = {}\ncomments = {}\nusers = {}\nrejected = {}\n"
      "ignored = {}\n",
      questions, answers, forums, comments, users, rejected, ignored);
}

std::string CorpusStats::to_text() const {
  std::ostringstream out;
  out << "question_count = " << question_count << '\n'
      << "answered_count = " << answered_count << '\n'
      << "accepted_count = " << accepted_count << '\n'
      << "answered_not_accepted_count = " << answered_not_accepted_count << '\n'
      << "unanswered_count = " << unanswered_count << '\n'
      << "answer_count = " << answer_count << '\n'
      << fmt::format("avg_answers_per_question = {:.4f}\n", avg_answers_per_question)
      << "total_views = " << total_views << '\n'
      << fmt::format("avg_views_per_question = {:.4f}\n", avg_views_per_question)
      << "technological_count = " << technological_count << '\n'
      << "non_technological_count = " << non_technological_count << '\n'
      << fmt::format("answered_ratio = {:.4f}\n", ratio(answered_count, question_count))
      << fmt::format("accepted_ratio = {:.4f}\n", ratio(accepted_count, question_count))
      << fmt::format("unanswered_ratio = {:.4f}\n", ratio(unanswered_count, question_count));
  return out.str();
}

json CorpusStats::to_json() const {
  return json{{"question_count", question_count},
              {"answered_count", answered_count},
              {"accepted_count", accepted_count},
              {"answered_not_accepted_count", answered_not_accepted_count},
              {"unanswered_count", unanswered_count},
              {"answer_count", answer_count},
              {"avg_answers_per_question", avg_answers_per_question},
              {"total_views", total_views},
              {"avg_views_per_question", avg_views_per_question},
              {"technological_count", technological_count},
              {"non_technological_count", non_technological_count}};
}

CorpusStore CorpusStore::open(const fs::path& dir) {
  fs::create_directories(dir);
  CorpusStore store;
  store.dir_ = dir;
  store.load();
  return store;
}

CorpusStore CorpusStore::open_existing(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("store directory does not exist: " + dir.string());
  CorpusStore store;
  store.dir_ = dir;
  store.load();
  return store;
}

void CorpusStore::load() {
  for (const char* name : {kPostsFile, kForumsFile, kCommentsFile, kUsersFile}) {
    const auto path = dir_ / name;
    if (!fs::exists(path)) continue;
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (trim(line).empty()) continue;
      Record record;
      try {
        record = record_from_json(json::parse(line));
      } catch (const json::exception& e) {
        throw Error("parse", fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
      }
      std::visit(
          [this](auto&& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, PostRecord>) {
              posts_[{r.source, r.id}] = std::move(r);
            } else if constexpr (std::is_same_v<T, ForumRecord>) {
              forums_[r.id] = std::move(r);
            } else if constexpr (std::is_same_v<T, CommentRecord>) {
              comments_[r.id] = std::move(r);
            } else {
              users_[r.id] = std::move(r);
            }
          },
          std::move(record));
    }
  }
}

void CorpusStore::save() const {
  if (dir_.empty()) return;
  write_file_atomic(dir_ / kPostsFile, dump_lines(posts_));
  write_file_atomic(dir_ / kForumsFile, dump_lines(forums_));
  write_file_atomic(dir_ / kCommentsFile, dump_lines(comments_));
  write_file_atomic(dir_ / kUsersFile, dump_lines(users_));
}

IngestSummary CorpusStore::put_records(std::vector<Record> records) {
  IngestSummary summary;
  std::vector<PostRecord> answers;
  std::vector<CommentRecord> comments;

  auto reject = [&summary](std::string reason) {
    ++summary.rejected;
    summary.diagnostics.push_back(std::move(reason));
  };

  for (auto& record : records) {
    std::visit(
        [&](auto&& r) {
          using T = std::decay_t<decltype(r)>;
          if (auto reason = normalize_and_validate(r); !reason.empty()) {
            reject(std::move(reason));
            return;
          }
          if constexpr (std::is_same_v<T, PostRecord>) {
            if (r.kind == PostKind::Answer) {
              answers.push_back(std::move(r));
            } else {
              ++summary.questions;
              posts_[{r.source, r.id}] = std::move(r);
            }
          } else if constexpr (std::is_same_v<T, ForumRecord>) {
            ++summary.forums;
            forums_[r.id] = std::move(r);
          } else if constexpr (std::is_same_v<T, CommentRecord>) {
            comments.push_back(std::move(r));
          } else {
            ++summary.users;
            users_[r.id] = std::move(r);
          }
        },
        std::move(record));
  }

  for (auto& answer : answers) {
    const auto* parent = find_post(answer.source, *answer.parent_id);
    if (parent == nullptr || !parent->is_question()) {
      reject(fmt::format("answer {} references missing question {}", answer.id, *answer.parent_id));
      continue;
    }
    ++summary.answers;
    posts_[{answer.source, answer.id}] = std::move(answer);
  }

  for (auto& comment : comments) {
    if (find_post(Source::ForumArchive, comment.post_id) == nullptr &&
        find_post(Source::StackExchangeDump, comment.post_id) == nullptr) {
      reject(fmt::format("comment {} references missing post {}", comment.id, comment.post_id));
      continue;
    }
    ++summary.comments;
    comments_[comment.id] = std::move(comment);
  }
  return summary;
}

std::vector<std::string> CorpusStore::classify_forums(const std::set<std::string>& names) {
  std::set<std::string> matched;
  for (auto& [id, forum] : forums_) {
    forum.technological = names.contains(forum.name);
    if (forum.technological) matched.insert(forum.name);
  }
  std::vector<std::string> warnings;
  for (const auto& name : names) {
    if (!matched.contains(name)) warnings.push_back("technological forum '" + name + "' matches no forum");
  }
  return warnings;
}

const PostRecord* CorpusStore::find_post(Source source, const std::string& id) const {
  auto it = posts_.find({source, id});
  return it == posts_.end() ? nullptr : &it->second;
}

const ForumRecord* CorpusStore::find_forum(const std::string& id) const {
  auto it = forums_.find(id);
  return it == forums_.end() ? nullptr : &it->second;
}

std::vector<const PostRecord*> CorpusStore::questions(Source source) const {
  std::vector<const PostRecord*> out;
  for (const auto& [key, post] : posts_) {
    if (key.first == source && post.is_question()) out.push_back(&post);
  }
  return out;
}

CorpusStats CorpusStore::compute_stats(const StatsQuery& query) const {
  auto is_technological = [this, &query](const PostRecord& q) {
    if (query.source == Source::StackExchangeDump) return true;
    if (!q.forum_id) return false;
    const auto* forum = find_forum(*q.forum_id);
    return forum != nullptr && forum->technological;
  };

  struct Tally {
    std::int64_t answers = 0;
    bool accepted = false;
  };
  std::unordered_map<std::string, Tally> selected;
  CorpusStats stats;

  for (const auto& [key, post] : posts_) {
    if (key.first != query.source || !post.is_question()) continue;
    if (query.question_ids && !query.question_ids->contains(post.id)) continue;
    const bool tech = is_technological(post);
    if (query.technological_only && !tech) continue;
    selected.emplace(post.id, Tally{});
    ++stats.question_count;
    stats.total_views += post.view_count;
    ++(tech ? stats.technological_count : stats.non_technological_count);
  }

  for (const auto& [key, post] : posts_) {
    if (key.first != query.source || post.is_question()) continue;
    auto it = selected.find(*post.parent_id);
    if (it == selected.end()) continue;
    ++it->second.answers;
    it->second.accepted = it->second.accepted || post.accepted;
    ++stats.answer_count;
  }

  for (const auto& [id, tally] : selected) {
    if (tally.answers > 0) ++stats.answered_count;
    if (tally.accepted) ++stats.accepted_count;
  }
  stats.unanswered_count = stats.question_count - stats.answered_count;
  stats.answered_not_accepted_count = stats.answered_count - stats.accepted_count;
  stats.avg_answers_per_question = ratio(stats.answer_count, stats.question_count);
  stats.avg_views_per_question = ratio(stats.total_views, stats.question_count);
  return stats;
}

}  // namespace qamine
