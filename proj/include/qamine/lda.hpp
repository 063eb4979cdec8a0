// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qamine/kernels.hpp"
#include "qamine/text_prep.hpp"

namespace qamine::lda {

struct LdaConfig {
  int num_topics = 40;
  /// Unset means 1/num_topics.
  std::optional<double> alpha;
  double beta = 0.1;
  int iterations = 1000;
  std::uint64_t seed = 1;
  /// Words occurring fewer times in the corpus are dropped. 1 keeps all.
  int min_count = 1;

  double effective_alpha() const { return alpha ? *alpha : 1.0 / num_topics; }
  void validate() const;
  /// Always writes the effective alpha.
  nlohmann::json to_json() const;
  static LdaConfig from_json(const nlohmann::json& j);
  friend bool operator==(const LdaConfig&, const LdaConfig&) = default;
};

/// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// State of a collapsed Gibbs sampler. Count tables are kept consistent
/// with the assignments z at all times outside a token update.
class TopicModel {
 public:
  LdaConfig config;
  /// Sorted; a word's index is its position.
  std::vector<std::string> vocabulary;
  std::vector<std::string> doc_ids;
  /// Per document, the word index of each token.
  std::vector<std::vector<std::int32_t>> words;
  /// Per document, the topic of each token.
  std::vector<std::vector<std::int32_t>> z;

  /// D x K, document-major.
  std::vector<std::int32_t> n_dk;
  /// V x K, word-major so one word's topic counts are contiguous.
  std::vector<std::int32_t> n_wk;
  /// K.
  std::vector<std::int32_t> n_k;

  std::size_t num_topics() const { return n_k.size(); }
  std::size_t num_docs() const { return doc_ids.size(); }
  std::size_t vocab_size() const { return vocabulary.size(); }
  std::size_t doc_length(std::size_t d) const { return words[d].size(); }
  std::size_t total_tokens() const;

  std::int32_t doc_topic(std::size_t d, std::size_t k) const { return n_dk[d * num_topics() + k]; }
  std::int32_t topic_word(std::size_t k, std::size_t w) const { return n_wk[w * num_topics() + k]; }
  std::optional<std::size_t> word_index(std::string_view word) const;

  /// Rebuilds n_dk, n_wk and n_k from words and z.
  void recount();

  friend bool operator==(const TopicModel&, const TopicModel&) = default;
};

/// Called after each full sweep with the 1-based sweep number.
using SweepObserver = std::function<void(int sweep, const TopicModel& model)>;

struct TrainOptions {
  SweepObserver observer;
  /// Defaults to simd::active_kernels().
  const simd::KernelTable* kernels = nullptr;
  /// Non-fatal conditions (more topics than tokens, pruned words).
  std::vector<std::string>* warnings = nullptr;
};

/// Throws InvalidArgument for an empty corpus or a bad config.
TopicModel train(const std::vector<text::Document>& documents, const LdaConfig& config,
                 const TrainOptions& options = {});

/// Checks non-negativity and that every marginal agrees with z. Returns one
/// message per violation; empty when consistent.
std::vector<std::string> verify_counts(const TopicModel& model);

/// K x V: (n_kw + beta) / (n_k + V beta).
Matrix phi(const TopicModel& model, const simd::KernelTable* kernels = nullptr);
/// D x K: (n_dk + alpha) / (n_d + K alpha).
Matrix theta(const TopicModel& model, const simd::KernelTable* kernels = nullptr);

/// argmax of theta's row d; ties go to the lowest topic id.
std::size_t dominant_topic(const TopicModel& model, std::size_t d);
std::size_t argmax_lowest(std::span<const double> row);

/// Documents per dominant topic.
std::vector<std::int64_t> nddt(const TopicModel& model);

struct TopicSummary {
  std::size_t topic_id = 0;
  std::vector<std::pair<std::string, double>> top_words;
  std::int64_t nddt = 0;
  std::optional<std::string> label;
  friend bool operator==(const TopicSummary&, const TopicSummary&) = default;
};

/// Top words by probability (ties: lexicographic), sorted by NDDT
/// descending then topic id.
std::vector<TopicSummary> summarize(const TopicModel& model, std::size_t top_n = 20);

/// Versioned text format; load() recomputes the count tables from z and
/// rejects a file whose stored tables disagree.
std::string model_to_text(const TopicModel& model);
TopicModel model_from_text(std::string_view text);
void save_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_model(const std::filesystem::path& path);

/// topic_id,rank,word,probability. Rows follow the summary order.
std::string topics_csv(const std::vector<TopicSummary>& summaries, std::string_view header_comment);
/// topic_id,nddt,label.
std::string nddt_csv(const std::vector<TopicSummary>& summaries, std::string_view header_comment);
/// Plain-text table with Id, Label, NDDT and leading words.
std::string main_topics_table(const std::vector<TopicSummary>& summaries, std::size_t words_shown = 10);

/// Reads back topics_csv (and labels, if nddt_csv is given).
std::vector<TopicSummary> read_topics_csv(std::string_view text);

}  // namespace qamine::lda
