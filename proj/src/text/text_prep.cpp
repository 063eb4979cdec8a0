// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/text_prep.hpp"

#include "qamine/io.hpp"
#include "qamine/strings.hpp"

namespace qamine::text {

using nlohmann::json;

namespace {

bool is_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view title) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < title.size(); ++i) {
    const char c = lower(title[i]);
    if (is_alnum(c)) {
      current.push_back(c);
    } else if (c == '.') {
      const bool next_alnum = i + 1 < title.size() && is_alnum(lower(title[i + 1]));
      if (next_alnum && (current.empty() || is_alnum(current.back()))) {
        current.push_back(c);
      } else {
        flush();
      }
    } else if (c == '#' || c == '+') {
      if (!current.empty() && current.back() != '.') {
        current.push_back(c);
      } else {
        flush();
      }
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens, const WordSet& stoplist) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stoplist.contains(t)) out.push_back(t);
  }
  return out;
}

std::string stem_plural(std::string_view word) {
  if (word.size() <= 2 || word.back() != 's') return std::string(word);
  if (ends_with(word, "sses")) return std::string(word.substr(0, word.size() - 2));
  if (ends_with(word, "ies")) return std::string(word.substr(0, word.size() - 2));
  if (ends_with(word, "ss")) return std::string(word);
  return std::string(word.substr(0, word.size() - 1));
}

std::vector<std::string> stem_custom(const std::vector<std::string>& tokens, const WordSet& protected_words) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(protected_words.contains(t) ? t : stem_plural(t));
  return out;
}

std::vector<std::string> preprocess_title(std::string_view title, const WordSet& stoplist,
                                          const WordSet& protected_words) {
  return stem_custom(remove_stopwords(tokenize(title), stoplist), protected_words);
}

DocumentBatch build_documents(const std::vector<std::string>& question_ids, Source source, const CorpusStore& store,
                              const WordSet& protected_words, const WordSet& stoplist) {
  DocumentBatch batch;
  for (const auto& id : question_ids) {
    const auto* post = store.find_post(source, id);
    if (post == nullptr || !post->is_question()) {
      batch.missing.push_back(id);
      continue;
    }
    auto tokens = preprocess_title(post->title, stoplist, protected_words);
    if (tokens.empty()) {
      batch.excluded.push_back(id);
      continue;
    }
    batch.documents.push_back({id, std::move(tokens)});
  }
  return batch;
}

WordSet load_word_set(const std::filesystem::path& path) {
  auto words = read_word_list(path.string());
  return WordSet(words.begin(), words.end());
}

std::string documents_to_ndjson(const std::vector<Document>& docs, const json& meta) {
  std::string out;
  if (meta.is_object() && !meta.empty()) out += json{{"meta", meta}}.dump() + "\n";
  for (const auto& d : docs) {
    out += json{{"question_id", d.question_id}, {"tokens", d.tokens}}.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Document> documents_from_ndjson(std::string_view text) {
  std::vector<Document> docs;
  for (const auto& line : split(text, '\n')) {
    if (trim(line).empty()) continue;
    const auto j = json::parse(line);
    if (j.contains("meta")) continue;
    docs.push_back({j.at("question_id").get<std::string>(), j.at("tokens").get<std::vector<std::string>>()});
  }
  return docs;
}

std::vector<Document> read_documents(const std::filesystem::path& path) {
  return documents_from_ndjson(read_file(path));
}

}  // namespace qamine::text
