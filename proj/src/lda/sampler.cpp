// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <random>

#include "qamine/error.hpp"
#include "qamine/lda.hpp"

namespace qamine::lda {

using nlohmann::json;

namespace {

// Uniform in [0, 1) from the top 53 bits.
double next_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int32_t next_index(std::mt19937_64& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(next_unit(rng) * static_cast<double>(n));
  return static_cast<std::int32_t>(std::min(i, n - 1));
}

void build_corpus(const std::vector<text::Document>& documents, int min_count, TopicModel& model,
                  std::vector<std::string>* warnings) {
  std::map<std::string, std::int64_t, std::less<>> freq;
  for (const auto& doc : documents) {
    for (const auto& t : doc.tokens) ++freq[t];
  }
  std::size_t pruned = 0;
  for (const auto& [word, n] : freq) {
    if (n >= min_count) {
      model.vocabulary.push_back(word);
    } else {
      ++pruned;
    }
  }
  if (pruned > 0 && warnings != nullptr) {
    warnings->push_back(fmt::format("{} word types below min_count {} dropped", pruned, min_count));
  }

  model.doc_ids.reserve(documents.size());
  model.words.reserve(documents.size());
  for (const auto& doc : documents) {
    std::vector<std::int32_t> ids;
    ids.reserve(doc.tokens.size());
    for (const auto& t : doc.tokens) {
      if (auto w = model.word_index(t)) ids.push_back(static_cast<std::int32_t>(*w));
    }
    model.doc_ids.push_back(doc.question_id);
    model.words.push_back(std::move(ids));
  }
}

}  // namespace

void LdaConfig::validate() const {
  if (num_topics < 1) throw InvalidArgument(fmt::format("num_topics must be >= 1, got {}", num_topics));
  if (alpha && !(*alpha > 0.0)) throw InvalidArgument(fmt::format("alpha must be > 0, got {}", *alpha));
  if (!(beta > 0.0)) throw InvalidArgument(fmt::format("beta must be > 0, got {}", beta));
  if (iterations < 1) throw InvalidArgument(fmt::format("iterations must be >= 1, got {}", iterations));
  if (min_count < 1) throw InvalidArgument(fmt::format("min_count must be >= 1, got {}", min_count));
}

json LdaConfig::to_json() const {
  return json{{"num_topics", num_topics}, {"alpha", effective_alpha()}, {"beta", beta},
              {"iterations", iterations}, {"seed", seed},           {"min_count", min_count}};
}

LdaConfig LdaConfig::from_json(const json& j) {
  LdaConfig c;
  c.num_topics = j.value("num_topics", c.num_topics);
  if (j.contains("alpha") && !j["alpha"].is_null()) c.alpha = j["alpha"].get<double>();
  c.beta = j.value("beta", c.beta);
  c.iterations = j.value("iterations", c.iterations);
  c.seed = j.value("seed", c.seed);
  c.min_count = j.value("min_count", c.min_count);
  return c;
}

std::size_t TopicModel::total_tokens() const {
  std::size_t n = 0;
  for (const auto& doc : words) n += doc.size();
  return n;
}

std::optional<std::size_t> TopicModel::word_index(std::string_view word) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), word);
  if (it == vocabulary.end() || *it != word) return std::nullopt;
  return static_cast<std::size_t>(it - vocabulary.begin());
}

void TopicModel::recount() {
  const auto K = static_cast<std::size_t>(config.num_topics);
  n_dk.assign(num_docs() * K, 0);
  n_wk.assign(vocab_size() * K, 0);
  n_k.assign(K, 0);
  for (std::size_t d = 0; d < num_docs(); ++d) {
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      const auto w = static_cast<std::size_t>(words[d][i]);
      const auto k = static_cast<std::size_t>(z[d][i]);
      ++n_dk[d * K + k];
      ++n_wk[w * K + k];
      ++n_k[k];
    }
  }
}

TopicModel train(const std::vector<text::Document>& documents, const LdaConfig& config,
                 const TrainOptions& options) {
  config.validate();
  TopicModel model;
  model.config = config;
  model.config.alpha = config.effective_alpha();
  build_corpus(documents, config.min_count, model, options.warnings);

  const std::size_t tokens = model.total_tokens();
  if (tokens == 0) throw InvalidArgument("cannot train on an empty corpus");
  const auto K = static_cast<std::size_t>(config.num_topics);
  if (K > tokens && options.warnings != nullptr) {
    options.warnings->push_back(fmt::format("num_topics {} exceeds the {} tokens in the corpus", K, tokens));
  }

  std::mt19937_64 rng(config.seed);
  model.z.resize(model.num_docs());
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    model.z[d].resize(model.words[d].size());
    for (auto& k : model.z[d]) k = next_index(rng, K);
  }
  model.recount();

  const auto& kernels = options.kernels != nullptr ? *options.kernels : simd::active_kernels();
  const double alpha = model.config.effective_alpha();
  const double beta = config.beta;
  const double vbeta = static_cast<double>(model.vocab_size()) * beta;
  std::vector<double> weights(K);

  for (int sweep = 1; sweep <= config.iterations; ++sweep) {
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
      std::int32_t* doc_counts = model.n_dk.data() + d * K;
      auto& zd = model.z[d];
      const auto& wd = model.words[d];
      for (std::size_t i = 0; i < wd.size(); ++i) {
        std::int32_t* word_counts = model.n_wk.data() + static_cast<std::size_t>(wd[i]) * K;
        const auto old = static_cast<std::size_t>(zd[i]);
        --doc_counts[old];
        --word_counts[old];
        --model.n_k[old];

        kernels.topic_weights(doc_counts, word_counts, model.n_k.data(), K, alpha, beta, vbeta, weights.data());
        double total = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
          total += weights[k];
          weights[k] = total;
        }
        const double u = next_unit(rng) * total;
        std::size_t k = 0;
        while (k + 1 < K && weights[k] <= u) ++k;

        zd[i] = static_cast<std::int32_t>(k);
        ++doc_counts[k];
        ++word_counts[k];
        ++model.n_k[k];
      }
    }
    if (options.observer) options.observer(sweep, model);
  }
  return model;
}

std::vector<std::string> verify_counts(const TopicModel& model) {
  std::vector<std::string> problems;
  const auto K = model.num_topics();
  if (K != static_cast<std::size_t>(model.config.num_topics)) {
    problems.push_back(fmt::format("n_k has {} entries, config says {}", K, model.config.num_topics));
    return problems;
  }
  if (model.z.size() != model.num_docs() || model.words.size() != model.num_docs()) {
    problems.push_back("document tables have different lengths");
    return problems;
  }
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    if (model.z[d].size() != model.words[d].size()) {
      problems.push_back(fmt::format("document {}: {} assignments for {} tokens", d, model.z[d].size(),
                                     model.words[d].size()));
      return problems;
    }
    for (std::size_t i = 0; i < model.z[d].size(); ++i) {
      if (model.z[d][i] < 0 || static_cast<std::size_t>(model.z[d][i]) >= K) {
        problems.push_back(fmt::format("document {} token {}: topic {} out of range", d, i, model.z[d][i]));
        return problems;
      }
      if (model.words[d][i] < 0 || static_cast<std::size_t>(model.words[d][i]) >= model.vocab_size()) {
        problems.push_back(fmt::format("document {} token {}: word {} out of range", d, i, model.words[d][i]));
        return problems;
      }
    }
  }

  TopicModel fresh;
  fresh.config = model.config;
  fresh.vocabulary = model.vocabulary;
  fresh.doc_ids = model.doc_ids;
  fresh.words = model.words;
  fresh.z = model.z;
  fresh.recount();

  auto compare = [&problems](std::string_view table, const std::vector<std::int32_t>& got,
                             const std::vector<std::int32_t>& want) {
    if (got.size() != want.size()) {
      problems.push_back(fmt::format("{}: {} entries, expected {}", table, got.size(), want.size()));
      return;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i] < 0) problems.push_back(fmt::format("{}[{}] is negative ({})", table, i, got[i]));
      if (got[i] != want[i]) problems.push_back(fmt::format("{}[{}] = {}, z implies {}", table, i, got[i], want[i]));
    }
  };
  compare("n_dk", model.n_dk, fresh.n_dk);
  compare("n_wk", model.n_wk, fresh.n_wk);
  compare("n_k", model.n_k, fresh.n_k);

  std::int64_t sum_k = 0;
  for (auto c : model.n_k) sum_k += c;
  if (sum_k != static_cast<std::int64_t>(model.total_tokens())) {
    problems.push_back(fmt::format("sum of n_k is {}, corpus has {} tokens", sum_k, model.total_tokens()));
  }
  return problems;
}

}  // namespace qamine::lda
