// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/forum_ingest.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

#include "qamine/html.hpp"
#include "qamine/io.hpp"
#include "qamine/strings.hpp"

namespace qamine::forum {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kRegionChars = 120;
constexpr std::string_view kAcceptedLabel = "accepted answer";

std::string region_at(std::string_view raw, std::size_t offset) {
  return normalize_whitespace(raw.substr(std::min(offset, raw.size()), kRegionChars));
}

[[noreturn]] void fail(const ArchivedPage& page, const html::Node& near, const std::string& what) {
  throw PageError(fmt::format("{}: {}", page.path.string(), what), region_at(page.raw, near.offset));
}

const html::Node& require_class(const ArchivedPage& page, const html::Node& scope, std::string_view cls) {
  const auto* node = scope.first_with_class(cls);
  if (node == nullptr) fail(page, scope, fmt::format("missing element with class '{}'", cls));
  return *node;
}

std::string require_attr(const ArchivedPage& page, const html::Node& node, std::string_view name) {
  const auto* value = node.attr(name);
  if (value == nullptr || trim(*value).empty()) fail(page, node, fmt::format("missing attribute '{}'", name));
  return std::string(trim(*value));
}

std::optional<std::string> optional_attr(const html::Node& node, std::string_view name) {
  const auto* value = node.attr(name);
  if (value == nullptr || trim(*value).empty()) return std::nullopt;
  return std::string(trim(*value));
}

Timestamp node_time(const html::Node& scope) {
  const auto* time = scope.find_first([](const html::Node& n) { return n.tag == "time"; });
  if (time == nullptr) return {};
  if (const auto* dt = time->attr("datetime")) {
    if (auto ts = parse_timestamp(trim(*dt))) return *ts;
  }
  return {};
}

std::vector<std::string> labels_in(const html::Node& scope) {
  std::vector<std::string> labels;
  for (const auto* label : scope.all_with_class("label")) {
    auto text = label->text_content();
    if (!text.empty()) labels.push_back(std::move(text));
  }
  return labels;
}

bool has_accepted_label(const std::vector<std::string>& labels) {
  return std::any_of(labels.begin(), labels.end(),
                     [](const std::string& l) { return normalize_label(l) == kAcceptedLabel; });
}

/// Author block: name, optional data-user-id, role badges.
std::optional<UserRecord> parse_author(const html::Node& scope) {
  const auto* author = scope.first_with_class("author");
  if (author == nullptr) return std::nullopt;
  UserRecord user;
  const auto* name = author->first_with_class("name");
  user.name = name != nullptr ? name->text_content() : author->text_content();
  if (user.name.empty()) return std::nullopt;
  user.id = optional_attr(*author, "data-user-id").value_or(user.name);
  for (const auto* role : author->all_with_class("role")) {
    auto text = role->text_content();
    if (!text.empty()) user.roles.push_back(std::move(text));
  }
  user.roles.emplace_back(kDefaultRole);
  normalize_set(user.roles);
  return user;
}

void add_user(std::vector<UserRecord>& users, UserRecord user) {
  auto it = std::find_if(users.begin(), users.end(), [&](const UserRecord& u) { return u.name == user.name; });
  if (it == users.end()) {
    users.push_back(std::move(user));
    return;
  }
  it->roles.insert(it->roles.end(), user.roles.begin(), user.roles.end());
  normalize_set(it->roles);
}

std::vector<ForumRecord> read_manifest(const fs::path& path) {
  if (!fs::exists(path)) throw IoError("forum manifest not found: " + path.string());
  std::vector<ForumRecord> forums;
  std::size_t line_no = 0;
  for (const auto& line : split(read_file(path), '\n')) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = split(view, '\t');
    if (fields.size() < 2) {
      throw Error("parse", fmt::format("{}:{}: expected 'id<TAB>name[<TAB>parent]'", path.string(), line_no));
    }
    ForumRecord forum;
    forum.id = std::string(trim(fields[0]));
    forum.name = std::string(trim(fields[1]));
    if (fields.size() > 2 && !trim(fields[2]).empty()) forum.parent_name = std::string(trim(fields[2]));
    forums.push_back(std::move(forum));
  }
  return forums;
}

}  // namespace

PageError::PageError(const std::string& message, std::string region)
    : Error("parse", message + " near: " + region), region_(std::move(region)) {}

ArchivedPage ArchivedPage::from_html(fs::path path, std::string raw) {
  const auto root = html::parse(raw);
  ArchivedPage page{std::move(path), PageKind::Index, std::move(raw)};
  if (root.first_with_class("forum-index") != nullptr) {
    page.kind = PageKind::Index;
  } else if (root.first_with_class("thread-page") != nullptr) {
    page.kind = PageKind::Thread;
  } else {
    const auto* body = root.find_first([](const html::Node& n) { return n.tag == "body"; });
    throw PageError(page.path.string() + ": neither a forum index nor a thread page",
                    region_at(page.raw, body != nullptr ? body->offset : 0));
  }
  return page;
}

ArchivedPage ArchivedPage::load(const fs::path& path) { return from_html(path, read_file(path)); }

std::int64_t parse_view_count(std::string_view text) {
  auto s = trim(text);
  std::int64_t multiplier = 1;
  if (!s.empty() && (s.back() == 'k' || s.back() == 'K')) {
    multiplier = 1000;
    s.remove_suffix(1);
  } else if (!s.empty() && (s.back() == 'm' || s.back() == 'M')) {
    multiplier = 1000000;
    s.remove_suffix(1);
  }
  std::int64_t whole = 0, frac = 0, scale = 1;
  bool seen_dot = false, any = false;
  for (char c : trim(s)) {
    if (c == ',' && !seen_dot) continue;
    if (c == '.' && !seen_dot) {
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw InvalidArgument("bad view count '" + std::string(text) + "'");
    any = true;
    if (seen_dot) {
      frac = frac * 10 + (c - '0');
      scale *= 10;
    } else {
      whole = whole * 10 + (c - '0');
    }
  }
  if (!any) throw InvalidArgument("bad view count '" + std::string(text) + "'");
  return whole * multiplier + (frac * multiplier + scale / 2) / scale;
}

std::vector<ThreadStub> parse_index_page(const ArchivedPage& page) {
  if (page.kind != PageKind::Index) throw InvalidArgument(page.path.string() + " is not an index page");
  const auto root = html::parse(page.raw);
  const auto& index = require_class(page, root, "forum-index");
  const auto forum_id = optional_attr(index, "data-forum-id");

  std::vector<ThreadStub> stubs;
  for (const auto* row : index.all_with_class("thread")) {
    ThreadStub stub;
    stub.id = require_attr(page, *row, "data-thread-id");
    stub.title = require_class(page, *row, "title").text_content();
    if (stub.title.empty()) fail(page, *row, "empty thread title");
    try {
      stub.view_count = parse_view_count(require_class(page, *row, "views").text_content());
      stub.answer_count = parse_view_count(require_class(page, *row, "answers").text_content());
    } catch (const InvalidArgument& e) {
      fail(page, *row, e.what());
    }
    stub.labels = labels_in(*row);
    stub.forum_id = forum_id;
    stubs.push_back(std::move(stub));
  }
  return stubs;
}

ParsedThread parse_thread_page(const ArchivedPage& page) {
  if (page.kind != PageKind::Thread) throw InvalidArgument(page.path.string() + " is not a thread page");
  const auto root = html::parse(page.raw);
  const auto& thread = require_class(page, root, "thread-page");

  ParsedThread out;
  auto& q = out.question;
  q.id = require_attr(page, thread, "data-thread-id");
  q.source = Source::ForumArchive;
  q.kind = PostKind::Question;
  q.forum_id = optional_attr(thread, "data-forum-id");
  q.title = require_class(page, thread, "title").text_content();
  if (q.title.empty()) fail(page, thread, "empty thread title");
  if (const auto* views = thread.first_with_class("views")) {
    try {
      out.page_views = parse_view_count(views->text_content());
    } catch (const InvalidArgument& e) {
      fail(page, *views, e.what());
    }
  }

  const auto& post = require_class(page, thread, "post");
  q.creation_date = node_time(post);
  if (const auto* body = post.first_with_class("body")) q.body = body->text_content();
  if (auto author = parse_author(post)) {
    q.author_id = author->id;
    add_user(out.users, std::move(*author));
  }

  for (const auto* reply : thread.all_with_class("comment")) {
    CommentRecord comment;
    comment.id = require_attr(page, *reply, "data-comment-id");
    comment.post_id = q.id;
    comment.date = node_time(*reply);
    comment.labels = labels_in(*reply);

    PostRecord answer;
    answer.id = comment.id;
    answer.source = Source::ForumArchive;
    answer.kind = PostKind::Answer;
    answer.parent_id = q.id;
    answer.creation_date = comment.date;
    answer.forum_id = q.forum_id;
    answer.accepted = has_accepted_label(comment.labels);
    if (const auto* body = reply->first_with_class("body")) answer.body = body->text_content();
    if (auto author = parse_author(*reply)) {
      answer.author_id = author->id;
      comment.author_id = author->id;
      add_user(out.users, std::move(*author));
    }
    normalize_set(comment.labels);
    out.answers.push_back(std::move(answer));
    out.comments.push_back(std::move(comment));
  }
  return out;
}

std::string ImportReport::to_text() const {
  std::string out = summary.to_text();
  out += fmt::format(
      "pages = {}\nindex_pages = {}\nthread_pages = {}\nskipped_pages = {}\nview_conflicts = {}\n"
      "answer_count_mismatches = {}\n",
      pages, index_pages, thread_pages, skipped_pages, view_conflicts, answer_count_mismatches);
  return out;
}

ImportReport import_archive(const fs::path& dir, CorpusStore& store) {
  if (!fs::is_directory(dir)) throw IoError("archive directory does not exist: " + dir.string());
  ImportReport report;
  auto forums = read_manifest(dir / "forums.tsv");

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    const auto ext = to_lower(entry.path().extension().string());
    if (entry.is_regular_file() && (ext == ".html" || ext == ".htm")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, ThreadStub, IdLess> stubs;
  std::vector<ParsedThread> threads;
  for (const auto& file : files) {
    ++report.pages;
    try {
      auto page = ArchivedPage::load(file);
      if (page.kind == PageKind::Index) {
        ++report.index_pages;
        for (auto& stub : parse_index_page(page)) {
          auto [it, inserted] = stubs.try_emplace(stub.id, stub);
          if (!inserted && it->second.view_count != stub.view_count) {
            ++report.view_conflicts;
            report.diagnostics.push_back(fmt::format("thread {}: conflicting index view counts {} and {}, keeping larger",
                                                     stub.id, it->second.view_count, stub.view_count));
            it->second.view_count = std::max(it->second.view_count, stub.view_count);
          }
        }
      } else {
        ++report.thread_pages;
        threads.push_back(parse_thread_page(page));
      }
    } catch (const PageError& e) {
      ++report.skipped_pages;
      report.diagnostics.push_back(std::string("skipped page: ") + e.what());
    }
  }

  std::vector<Record> records;
  for (auto& forum : forums) {
    if (const auto* existing = store.find_forum(forum.id)) forum.technological = existing->technological;
    records.emplace_back(std::move(forum));
  }
  std::map<std::string, UserRecord> users_by_name;
  for (auto& thread : threads) {
    auto& q = thread.question;
    auto stub = stubs.find(q.id);
    std::optional<std::int64_t> views = thread.page_views;
    if (stub != stubs.end()) {
      if (views && *views != stub->second.view_count) {
        ++report.view_conflicts;
        report.diagnostics.push_back(fmt::format("thread {}: page shows {} views, index shows {}, keeping larger",
                                                 q.id, *views, stub->second.view_count));
      }
      views = std::max(views.value_or(0), stub->second.view_count);
      if (!q.forum_id) q.forum_id = stub->second.forum_id;
      if (stub->second.answer_count != static_cast<std::int64_t>(thread.answers.size())) {
        ++report.answer_count_mismatches;
        report.diagnostics.push_back(fmt::format("thread {}: index lists {} answers, page has {}", q.id,
                                                 stub->second.answer_count, thread.answers.size()));
      }
    }
    q.view_count = views.value_or(0);
    for (auto& user : thread.users) {
      auto [it, inserted] = users_by_name.try_emplace(user.name, user);
      if (!inserted) {
        it->second.roles.insert(it->second.roles.end(), user.roles.begin(), user.roles.end());
        normalize_set(it->second.roles);
      }
    }
    const auto forum_id = q.forum_id;
    records.emplace_back(std::move(q));
    for (auto& a : thread.answers) {
      a.forum_id = forum_id;
      records.emplace_back(std::move(a));
    }
    for (auto& c : thread.comments) records.emplace_back(std::move(c));
  }
  for (auto& [name, user] : users_by_name) records.emplace_back(std::move(user));

  report.summary = store.put_records(std::move(records));
  return report;
}

}  // namespace qamine::forum
