// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <sstream>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/topic_analysis.hpp"

namespace qamine::analysis {

std::vector<RelevantQuestion> relevant_questions(const lda::TopicModel& model, const CorpusStore& store,
                                                 Source source, std::size_t topic, const RelevanceOptions& options) {
  if (topic >= model.num_topics()) {
    throw InvalidArgument(fmt::format("topic {} out of range (model has {} topics)", topic, model.num_topics()));
  }
  const auto t = lda::theta(model);
  std::vector<RelevantQuestion> out;
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    if (lda::argmax_lowest(t.row(d)) != topic) continue;
    const auto* post = store.find_post(source, model.doc_ids[d]);
    if (post == nullptr || !post->is_question()) {
      throw InvalidArgument(fmt::format("model document '{}' is not a {} question in the store", model.doc_ids[d],
                                        to_string(source)));
    }
    if (post->view_count < options.min_views) continue;
    if (post->score && *post->score < options.min_score) continue;
    out.push_back({post->id, post->title, post->view_count, post->score});
  }
  std::sort(out.begin(), out.end(), [](const RelevantQuestion& a, const RelevantQuestion& b) {
    if (a.views != b.views) return a.views > b.views;
    if (a.score != b.score) {
      if (!a.score || !b.score) return a.score.has_value();
      return *a.score > *b.score;
    }
    return IdLess{}(a.id, b.id);
  });
  return out;
}

std::string relevant_csv(const std::vector<RelevantQuestion>& questions, std::size_t topic,
                         std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  csv::write_row(out, {"topic_id", "question_id", "views", "score", "title"});
  for (const auto& q : questions) {
    csv::write_row(out, {std::to_string(topic), q.id, std::to_string(q.views),
                         q.score ? std::to_string(*q.score) : std::string{}, q.title});
  }
  return out.str();
}

}  // namespace qamine::analysis
