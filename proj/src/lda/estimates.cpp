// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/lda.hpp"
#include "qamine/strings.hpp"

namespace qamine::lda {

namespace {

const simd::KernelTable& table_or_default(const simd::KernelTable* kernels) {
  return kernels != nullptr ? *kernels : simd::active_kernels();
}

std::string format_probability(double p) { return fmt::format("{:.6f}", p); }

}  // namespace

Matrix phi(const TopicModel& model, const simd::KernelTable* kernels) {
  const auto& table = table_or_default(kernels);
  const auto K = model.num_topics();
  const auto V = model.vocab_size();
  const double beta = model.config.beta;
  const double vbeta = static_cast<double>(V) * beta;
  Matrix m{K, V, std::vector<double>(K * V)};
  std::vector<std::int32_t> column(V);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < V; ++w) column[w] = model.n_wk[w * K + k];
    table.smoothed_ratio(column.data(), V, beta, static_cast<double>(model.n_k[k]) + vbeta, m.data.data() + k * V);
  }
  return m;
}

Matrix theta(const TopicModel& model, const simd::KernelTable* kernels) {
  const auto& table = table_or_default(kernels);
  const auto K = model.num_topics();
  const auto D = model.num_docs();
  const double alpha = model.config.effective_alpha();
  const double kalpha = static_cast<double>(K) * alpha;
  Matrix m{D, K, std::vector<double>(D * K)};
  for (std::size_t d = 0; d < D; ++d) {
    table.smoothed_ratio(model.n_dk.data() + d * K, K, alpha,
                         static_cast<double>(model.doc_length(d)) + kalpha, m.data.data() + d * K);
  }
  return m;
}

std::size_t argmax_lowest(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < row.size(); ++k) {
    if (row[k] > row[best]) best = k;
  }
  return best;
}

std::size_t dominant_topic(const TopicModel& model, std::size_t d) {
  if (d >= model.num_docs()) throw InvalidArgument(fmt::format("document index {} out of range", d));
  const auto K = model.num_topics();
  const double alpha = model.config.effective_alpha();
  const double denom = static_cast<double>(model.doc_length(d)) + static_cast<double>(K) * alpha;
  std::vector<double> row(K);
  simd::active_kernels().smoothed_ratio(model.n_dk.data() + d * K, K, alpha, denom, row.data());
  return argmax_lowest(row);
}

std::vector<std::int64_t> nddt(const TopicModel& model) {
  std::vector<std::int64_t> counts(model.num_topics(), 0);
  const auto t = theta(model);
  for (std::size_t d = 0; d < model.num_docs(); ++d) ++counts[argmax_lowest(t.row(d))];
  return counts;
}

std::vector<TopicSummary> summarize(const TopicModel& model, std::size_t top_n) {
  const auto p = phi(model);
  const auto counts = nddt(model);
  const auto V = model.vocab_size();
  const std::size_t n = std::min(top_n, V);

  std::vector<TopicSummary> out;
  std::vector<std::size_t> order(V);
  for (std::size_t k = 0; k < model.num_topics(); ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto row = p.row(k);
    // Vocabulary is sorted, so the lower index is the lexicographically
    // smaller word.
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                      [&row](std::size_t a, std::size_t b) { return row[a] != row[b] ? row[a] > row[b] : a < b; });
    TopicSummary s;
    s.topic_id = k;
    s.nddt = counts[k];
    for (std::size_t i = 0; i < n; ++i) s.top_words.emplace_back(model.vocabulary[order[i]], row[order[i]]);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TopicSummary& a, const TopicSummary& b) { return a.nddt > b.nddt; });
  return out;
}

std::string topics_csv(const std::vector<TopicSummary>& summaries, std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  csv::write_row(out, {"topic_id", "rank", "word", "probability"});
  for (const auto& s : summaries) {
    for (std::size_t r = 0; r < s.top_words.size(); ++r) {
      csv::write_row(out, {std::to_string(s.topic_id), std::to_string(r + 1), s.top_words[r].first,
                           format_probability(s.top_words[r].second)});
    }
  }
  return out.str();
}

std::string nddt_csv(const std::vector<TopicSummary>& summaries, std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  csv::write_row(out, {"topic_id", "nddt", "label"});
  for (const auto& s : summaries) {
    csv::write_row(out, {std::to_string(s.topic_id), std::to_string(s.nddt), s.label.value_or("")});
  }
  return out.str();
}

std::string main_topics_table(const std::vector<TopicSummary>& summaries, std::size_t words_shown) {
  std::vector<std::string> labels;
  std::size_t label_width = 5;
  for (const auto& s : summaries) {
    labels.push_back(s.label.value_or("(unlabeled)"));
    label_width = std::max(label_width, labels.back().size());
  }
  std::ostringstream out;
  out << fmt::format("{:>4}  {:<{}}  {:>6}  {}\n", "Id", "Label", label_width, "NDDT", "Top words");
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const auto& s = summaries[i];
    std::string words;
    for (std::size_t r = 0; r < std::min(words_shown, s.top_words.size()); ++r) {
      if (r > 0) words += ' ';
      words += s.top_words[r].first;
    }
    out << fmt::format("{:>4}  {:<{}}  {:>6}  {}\n", s.topic_id, labels[i], label_width, s.nddt, words);
  }
  return out.str();
}

std::vector<TopicSummary> read_topics_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error("parse", "topics file is empty");
  const auto& header = rows.front();
  const int c_topic = csv::column(header, "topic_id");
  const int c_word = csv::column(header, "word");
  const int c_prob = csv::column(header, "probability");
  if (c_topic < 0 || c_word < 0) throw Error("parse", "topics file needs topic_id and word columns");

  std::vector<TopicSummary> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    long long id = 0;
    if (static_cast<std::size_t>(c_topic) >= row.size() || !parse_int(row[c_topic], id) || id < 0) {
      throw Error("parse", fmt::format("topics file row {}: bad topic_id", r + 1));
    }
    if (out.empty() || out.back().topic_id != static_cast<std::size_t>(id)) {
      out.push_back(TopicSummary{static_cast<std::size_t>(id), {}, 0, std::nullopt});
    }
    double prob = 0.0;
    if (c_prob >= 0 && static_cast<std::size_t>(c_prob) < row.size() && !row[c_prob].empty()) {
      prob = std::stod(row[c_prob]);
    }
    out.back().top_words.emplace_back(row.at(static_cast<std::size_t>(c_word)), prob);
  }
  return out;
}

}  // namespace qamine::lda
