// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

// Layout, one item per line:
//   qamine-lda-model 1
//   config <json>
//   vocabulary <V>        followed by V JSON-quoted words
//   documents <D>         followed by D lines: <json id> <n> w:z w:z ...
//   n_k <K counts>
//   n_dk <D>              followed by D lines of K counts
//   n_wk <V>              followed by V lines of K counts

#include <fmt/format.h>

#include <sstream>

#include "qamine/error.hpp"
#include "qamine/io.hpp"
#include "qamine/lda.hpp"
#include "qamine/strings.hpp"

namespace qamine::lda {

using nlohmann::json;

namespace {

constexpr std::string_view kMagic = "qamine-lda-model";
constexpr int kFormatVersion = 1;

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) fail("unexpected end of file");
    const auto end = text_.find('\n', pos_);
    const auto line = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++line_no_;
    return line;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("parse", fmt::format("model file line {}: {}", line_no_, what));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

long long to_int(const LineReader& in, std::string_view s) {
  long long v = 0;
  if (!parse_int(s, v)) in.fail("expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::size_t expect_section(LineReader& in, std::string_view name) {
  const auto f = fields(in.next());
  if (f.size() != 2 || f[0] != name) in.fail("expected '" + std::string(name) + " <count>'");
  const auto n = to_int(in, f[1]);
  if (n < 0) in.fail("negative count");
  return static_cast<std::size_t>(n);
}

void read_counts(LineReader& in, std::string_view line, std::size_t expected, std::vector<std::int32_t>& out) {
  const auto f = fields(line);
  if (f.size() != expected) in.fail(fmt::format("expected {} counts, got {}", expected, f.size()));
  for (auto v : f) out.push_back(static_cast<std::int32_t>(to_int(in, v)));
}

void write_counts(std::string& out, const std::int32_t* begin, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out.push_back(' ');
    out += std::to_string(begin[i]);
  }
  out.push_back('\n');
}

}  // namespace

std::string model_to_text(const TopicModel& model) {
  const auto K = model.num_topics();
  std::string out = fmt::format("{} {}\n", kMagic, kFormatVersion);
  out += "config " + model.config.to_json().dump() + "\n";
  out += fmt::format("vocabulary {}\n", model.vocab_size());
  for (const auto& w : model.vocabulary) out += json(w).dump() + "\n";
  out += fmt::format("documents {}\n", model.num_docs());
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    out += json(model.doc_ids[d]).dump();
    out += fmt::format(" {}", model.words[d].size());
    for (std::size_t i = 0; i < model.words[d].size(); ++i) {
      out += fmt::format(" {}:{}", model.words[d][i], model.z[d][i]);
    }
    out.push_back('\n');
  }
  out += "n_k ";
  write_counts(out, model.n_k.data(), K);
  out += fmt::format("n_dk {}\n", model.num_docs());
  for (std::size_t d = 0; d < model.num_docs(); ++d) write_counts(out, model.n_dk.data() + d * K, K);
  out += fmt::format("n_wk {}\n", model.vocab_size());
  for (std::size_t w = 0; w < model.vocab_size(); ++w) write_counts(out, model.n_wk.data() + w * K, K);
  return out;
}

TopicModel model_from_text(std::string_view text) {
  LineReader in(text);
  {
    const auto f = fields(in.next());
    if (f.size() != 2 || f[0] != kMagic) in.fail("not a qamine model file");
    if (to_int(in, f[1]) != kFormatVersion) in.fail("unsupported model format version " + std::string(f[1]));
  }

  TopicModel model;
  {
    const auto line = in.next();
    if (!line.starts_with("config ")) in.fail("expected config line");
    try {
      model.config = LdaConfig::from_json(json::parse(line.substr(7)));
      model.config.validate();
    } catch (const json::exception& e) {
      in.fail(std::string("bad config: ") + e.what());
    }
  }
  const auto K = static_cast<std::size_t>(model.config.num_topics);

  const auto V = expect_section(in, "vocabulary");
  model.vocabulary.reserve(V);
  for (std::size_t i = 0; i < V; ++i) {
    try {
      model.vocabulary.push_back(json::parse(in.next()).get<std::string>());
    } catch (const json::exception& e) {
      in.fail(std::string("bad vocabulary entry: ") + e.what());
    }
    if (i > 0 && !(model.vocabulary[i - 1] < model.vocabulary[i])) in.fail("vocabulary is not sorted");
  }

  const auto D = expect_section(in, "documents");
  for (std::size_t d = 0; d < D; ++d) {
    const auto line = in.next();
    std::size_t end = 0;
    std::string id;
    {
      // The id is a JSON string; find its closing quote.
      if (line.empty() || line[0] != '"') in.fail("document line must start with a quoted id");
      bool escaped = false;
      for (end = 1; end < line.size(); ++end) {
        if (escaped) {
          escaped = false;
        } else if (line[end] == '\\') {
          escaped = true;
        } else if (line[end] == '"') {
          break;
        }
      }
      if (end >= line.size()) in.fail("unterminated document id");
      id = json::parse(line.substr(0, end + 1)).get<std::string>();
    }
    const auto f = fields(line.substr(end + 1));
    if (f.empty()) in.fail("missing token count");
    const auto n = static_cast<std::size_t>(to_int(in, f[0]));
    if (f.size() != n + 1) in.fail(fmt::format("expected {} tokens, got {}", n, f.size() - 1));
    std::vector<std::int32_t> w, z;
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto colon = f[i].find(':');
      if (colon == std::string_view::npos) in.fail("token must be word:topic");
      const auto wi = to_int(in, f[i].substr(0, colon));
      const auto zi = to_int(in, f[i].substr(colon + 1));
      if (wi < 0 || static_cast<std::size_t>(wi) >= V) in.fail(fmt::format("word index {} out of range", wi));
      if (zi < 0 || static_cast<std::size_t>(zi) >= K) in.fail(fmt::format("topic {} out of range", zi));
      w.push_back(static_cast<std::int32_t>(wi));
      z.push_back(static_cast<std::int32_t>(zi));
    }
    model.doc_ids.push_back(std::move(id));
    model.words.push_back(std::move(w));
    model.z.push_back(std::move(z));
  }

  TopicModel stored;
  {
    const auto line = in.next();
    if (!line.starts_with("n_k ")) in.fail("expected n_k line");
    read_counts(in, line.substr(4), K, stored.n_k);
  }
  if (expect_section(in, "n_dk") != D) in.fail("n_dk row count differs from document count");
  for (std::size_t d = 0; d < D; ++d) read_counts(in, in.next(), K, stored.n_dk);
  if (expect_section(in, "n_wk") != V) in.fail("n_wk row count differs from vocabulary size");
  for (std::size_t w = 0; w < V; ++w) read_counts(in, in.next(), K, stored.n_wk);

  model.recount();
  if (stored.n_k != model.n_k || stored.n_dk != model.n_dk || stored.n_wk != model.n_wk) {
    throw Error("parse", "model file count tables disagree with its topic assignments");
  }
  return model;
}

void save_model(const TopicModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, model_to_text(model));
}

TopicModel load_model(const std::filesystem::path& path) { return model_from_text(read_file(path)); }

}  // namespace qamine::lda
