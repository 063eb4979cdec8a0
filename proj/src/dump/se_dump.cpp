// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/se_dump.hpp"

#include <expat.h>
#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <climits>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>

#include "qamine/strings.hpp"

namespace qamine::dump {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kChunkSize = 1 << 16;
constexpr std::size_t kMaxDiagnostics = 20;

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};
using ParserPtr = std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter>;

struct RowContext {
  XML_Parser parser = nullptr;
  const std::function<void(const DumpRow&)>* visit = nullptr;
  std::exception_ptr error;
};

void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
  auto* ctx = static_cast<RowContext*>(data);
  if (std::strcmp(name, "row") != 0) return;
  try {
    (*ctx->visit)(DumpRow(attrs));
  } catch (...) {
    // Exceptions must not unwind through the C parser.
    ctx->error = std::current_exception();
    XML_StopParser(ctx->parser, XML_FALSE);
  }
}

bool to_int(const char* text, long long& out) { return text != nullptr && parse_int(text, out); }

void note(ParseReport& report, std::string message) {
  ++report.skipped;
  if (report.diagnostics.size() < kMaxDiagnostics) report.diagnostics.push_back(std::move(message));
}

}  // namespace

DumpError::DumpError(const std::string& message, std::uint64_t offset)
    : Error("parse", fmt::format("{} (byte offset {})", message, offset)), offset_(offset) {}

const char* DumpRow::get(std::string_view name) const {
  for (const char** a = attrs_; *a != nullptr; a += 2) {
    if (name == a[0]) return a[1];
  }
  return nullptr;
}

void for_each_row(const fs::path& path, const std::function<void(const DumpRow&)>& visit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dump file " + path.string());

  ParserPtr parser(XML_ParserCreate(nullptr));
  if (!parser) throw Error("internal", "cannot allocate XML parser");
  RowContext ctx{parser.get(), &visit, nullptr};
  XML_SetUserData(parser.get(), &ctx);
  XML_SetStartElementHandler(parser.get(), on_start);

  std::array<char, kChunkSize> buffer{};
  for (;;) {
    in.read(buffer.data(), buffer.size());
    const auto got = static_cast<int>(in.gcount());
    const bool final = got < static_cast<int>(buffer.size());
    if (XML_Parse(parser.get(), buffer.data(), got, final ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      if (ctx.error) std::rethrow_exception(ctx.error);
      const auto offset = static_cast<std::uint64_t>(XML_GetCurrentByteIndex(parser.get()));
      throw DumpError(fmt::format("{}: malformed XML: {}", path.string(),
                                  XML_ErrorString(XML_GetErrorCode(parser.get()))),
                      offset);
    }
    if (final) break;
  }
}

std::vector<std::string> parse_tag_string(std::string_view text) {
  std::vector<std::string> raw;
  text = trim(text);
  if (text.empty()) return {};
  if (text.front() == '<') {
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto open = text.find('<', pos);
      if (open == std::string_view::npos) break;
      auto close = text.find('>', open + 1);
      if (close == std::string_view::npos) break;
      raw.emplace_back(text.substr(open + 1, close - open - 1));
      pos = close + 1;
    }
  } else {
    for (auto& part : split(text, '|')) raw.push_back(std::move(part));
  }
  return normalize_tags(raw);
}

ParseReport parse_posts(const fs::path& path, const PostSink& sink, const ParseOptions& options) {
  // Pass 1: accepted answer id -> question id, sorted for binary search.
  std::vector<std::pair<long long, long long>> accepted;
  for_each_row(path, [&accepted](const DumpRow& row) {
    long long id = 0, type = 0, answer = 0;
    if (to_int(row.get("Id"), id) && to_int(row.get("PostTypeId"), type) && type == 1 &&
        to_int(row.get("AcceptedAnswerId"), answer)) {
      accepted.emplace_back(answer, id);
    }
  });
  std::sort(accepted.begin(), accepted.end());

  auto accepted_parent = [&accepted](long long answer_id) -> long long {
    auto it = std::lower_bound(accepted.begin(), accepted.end(), std::make_pair(answer_id, LLONG_MIN));
    return it != accepted.end() && it->first == answer_id ? it->second : -1;
  };

  ParseReport report;
  for_each_row(path, [&](const DumpRow& row) {
    ++report.rows;
    long long id = 0, type = 0;
    if (!to_int(row.get("Id"), id)) {
      note(report, fmt::format("row {}: missing or invalid Id", report.rows));
      return;
    }
    if (!to_int(row.get("PostTypeId"), type)) {
      note(report, fmt::format("row Id={}: missing or invalid PostTypeId", id));
      return;
    }
    if (type != 1 && type != 2) {
      ++report.ignored;
      return;
    }

    PostRecord post;
    post.id = std::to_string(id);
    post.source = Source::StackExchangeDump;
    if (const char* date = row.get("CreationDate")) {
      if (auto ts = parse_timestamp(date)) post.creation_date = *ts;
    }
    long long value = 0;
    if (to_int(row.get("Score"), value)) post.score = value;
    if (const char* owner = row.get("OwnerUserId")) post.author_id = owner;
    if (options.keep_body) {
      if (const char* body = row.get("Body")) post.body = body;
    }

    if (type == 1) {
      const char* title = row.get("Title");
      if (title == nullptr || trim(title).empty()) {
        note(report, fmt::format("question Id={}: missing Title", id));
        return;
      }
      post.kind = PostKind::Question;
      post.title = title;
      if (const char* tags = row.get("Tags")) post.tags = parse_tag_string(tags);
      if (to_int(row.get("ViewCount"), value)) post.view_count = std::max(0LL, value);
      ++report.questions;
    } else {
      long long parent = 0;
      if (!to_int(row.get("ParentId"), parent)) {
        note(report, fmt::format("answer Id={}: missing ParentId", id));
        return;
      }
      post.kind = PostKind::Answer;
      post.parent_id = std::to_string(parent);
      post.accepted = accepted_parent(id) == parent;
      ++report.answers;
    }
    sink(std::move(post));
  });
  return report;
}

ParseReport parse_tags(const fs::path& path, const TagSink& sink) {
  ParseReport report;
  for_each_row(path, [&](const DumpRow& row) {
    ++report.rows;
    const char* name = row.get("TagName");
    long long count = 0;
    if (name == nullptr || !to_int(row.get("Count"), count)) {
      note(report, fmt::format("tag row {}: missing TagName or Count", report.rows));
      return;
    }
    ++report.tags;
    sink(to_lower(name), count);
  });
  return report;
}

}  // namespace qamine::dump
