// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/io.hpp"
#include "qamine/strings.hpp"
#include "qamine/topic_analysis.hpp"

namespace qamine::analysis {

LabelFile parse_label_csv(std::string_view text, std::string source) {
  const auto rows = csv::parse(text);
  LabelFile file;
  file.source = std::move(source);
  if (rows.empty()) return file;
  const int c_id = csv::column(rows.front(), "topic_id");
  const int c_label = csv::column(rows.front(), "label");
  if (c_id < 0 || c_label < 0) throw Error("parse", "label file needs topic_id and label columns");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    long long id = 0;
    if (row.size() <= static_cast<std::size_t>(std::max(c_id, c_label)) || !parse_int(row[c_id], id) || id < 0) {
      throw Error("parse", fmt::format("label file row {}: bad topic_id", r + 1));
    }
    const auto label = std::string(trim(row[c_label]));
    if (label.empty()) continue;
    if (!file.labels.emplace(static_cast<std::size_t>(id), label).second) {
      throw Error("parse", fmt::format("label file: topic {} labeled twice", id));
    }
  }
  return file;
}

LabelFile read_label_file(const std::filesystem::path& path, std::string source) {
  return parse_label_csv(read_file(path), std::move(source));
}

LabeledSummaries apply_labels(std::vector<lda::TopicSummary> summaries, const LabelFile& labels) {
  std::set<std::size_t> ids;
  for (const auto& s : summaries) ids.insert(s.topic_id);
  std::vector<std::string> unknown;
  for (const auto& [id, label] : labels.labels) {
    if (!ids.contains(id)) unknown.push_back(std::to_string(id));
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& u : unknown) list += (list.empty() ? "" : ",") + u;
    throw InvalidArgument("labels given for nonexistent topic ids: " + list);
  }

  LabeledSummaries out;
  for (auto& s : summaries) {
    if (auto it = labels.labels.find(s.topic_id); it != labels.labels.end()) {
      s.label = it->second;
    } else {
      s.label.reset();
      out.unlabeled.push_back(s.topic_id);
    }
  }
  std::sort(out.unlabeled.begin(), out.unlabeled.end());
  out.summaries = std::move(summaries);
  return out;
}

}  // namespace qamine::analysis
