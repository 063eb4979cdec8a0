// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qamine/corpus_store.hpp"

namespace qamine::text {

/// Preprocessed question title.
struct Document {
  std::string question_id;
  std::vector<std::string> tokens;
  friend bool operator==(const Document&, const Document&) = default;
};

using WordSet = std::set<std::string, std::less<>>;

/// Lowercases and splits on everything outside [a-z0-9.#+]. A '.' is kept
/// only when an alphanumeric follows it ("xamarin.forms", ".net"); '#' and
/// '+' only when they follow an alphanumeric, '#' or '+' ("c#", "c++").
/// Everything else separates tokens.
std::vector<std::string> tokenize(std::string_view title);

/// The built-in English stop word list.
const WordSet& default_stoplist();

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens, const WordSet& stoplist);

/// Plural reduction: SSES -> SS, IES -> I, SS -> SS, S -> "". Words of two
/// characters or fewer are left alone.
std::string stem_plural(std::string_view word);

/// Protected tokens pass through unchanged; the rest get stem_plural.
std::vector<std::string> stem_custom(const std::vector<std::string>& tokens, const WordSet& protected_words);

/// tokenize -> remove_stopwords -> stem_custom.
std::vector<std::string> preprocess_title(std::string_view title, const WordSet& stoplist,
                                          const WordSet& protected_words);

struct DocumentBatch {
  std::vector<Document> documents;
  /// Question ids whose title produced no tokens.
  std::vector<std::string> excluded;
  /// Question ids not found in the store.
  std::vector<std::string> missing;
};

DocumentBatch build_documents(const std::vector<std::string>& question_ids, Source source, const CorpusStore& store,
                              const WordSet& protected_words, const WordSet& stoplist);

WordSet load_word_set(const std::filesystem::path& path);

/// NDJSON: optional meta line, then {"question_id", "tokens"} per line.
std::string documents_to_ndjson(const std::vector<Document>& docs, const nlohmann::json& meta = {});
std::vector<Document> documents_from_ndjson(std::string_view text);
std::vector<Document> read_documents(const std::filesystem::path& path);

}  // namespace qamine::text
