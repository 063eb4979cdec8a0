// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/io.hpp"
#include "qamine/strings.hpp"
#include "qamine/topic_analysis.hpp"

namespace qamine::analysis {

namespace {

using WordProbs = std::map<std::string, std::optional<double>, std::less<>>;

WordProbs top_words(const MatchTopic& t, std::size_t top_m) {
  WordProbs out;
  for (const auto& [word, prob] : t.words) {
    if (out.size() >= top_m) break;
    out.emplace(to_lower(word), prob);
  }
  return out;
}

}  // namespace

std::vector<MatchTopic> to_match_topics(const std::vector<lda::TopicSummary>& summaries) {
  std::vector<MatchTopic> out;
  for (const auto& s : summaries) {
    MatchTopic t{std::to_string(s.topic_id), s.label, {}};
    for (const auto& [w, p] : s.top_words) t.words.emplace_back(w, p);
    out.push_back(std::move(t));
  }
  return out;
}

ExternalTopicSet parse_external_topics(std::string_view text) {
  const auto rows = csv::parse(text);
  ExternalTopicSet set;
  if (rows.empty()) return set;
  const auto& header = rows.front();
  const int c_id = csv::column(header, "id");
  const int c_label = csv::column(header, "label");
  const int c_word = csv::column(header, "word");
  const int c_prob = csv::column(header, "probability");
  if (c_id < 0 || c_word < 0) throw Error("parse", "topic table needs id and word columns");

  std::map<std::string, std::size_t> index;
  auto cell = [](const csv::Row& row, int c) -> std::string_view {
    return c >= 0 && static_cast<std::size_t>(c) < row.size() ? trim(row[c]) : std::string_view{};
  };
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto id = std::string(cell(row, c_id));
    if (id.empty()) throw Error("parse", fmt::format("topic table row {}: empty id", r + 1));
    auto [it, inserted] = index.emplace(id, set.topics.size());
    if (inserted) set.topics.push_back(MatchTopic{id, std::nullopt, {}});
    auto& topic = set.topics[it->second];
    if (const auto label = cell(row, c_label); !label.empty()) {
      if (topic.label && *topic.label != label) {
        throw Error("parse", fmt::format("topic table row {}: topic {} has two labels", r + 1, id));
      }
      topic.label = std::string(label);
    }
    const auto word = cell(row, c_word);
    if (word.empty()) continue;
    std::optional<double> prob;
    if (const auto p = cell(row, c_prob); !p.empty()) {
      try {
        prob = std::stod(std::string(p));
      } catch (const std::exception&) {
        throw Error("parse", fmt::format("topic table row {}: bad probability '{}'", r + 1, p));
      }
    }
    topic.words.emplace_back(std::string(word), prob);
  }
  return set;
}

ExternalTopicSet read_external_topics(const std::filesystem::path& path) {
  return parse_external_topics(read_file(path));
}

std::string_view to_string(MatchKind kind) {
  return kind == MatchKind::LabelEquality ? "label_equality" : "word_overlap";
}

std::vector<TopicMatch> match_topics(const std::vector<MatchTopic>& left, const std::vector<MatchTopic>& right,
                                     const MatchOptions& options) {
  if (options.top_m == 0) throw InvalidArgument("top_m must be positive");
  if (options.min_shared == 0) throw InvalidArgument("min_shared must be positive");

  std::vector<TopicMatch> labeled;
  std::vector<TopicMatch> overlap;
  std::vector<WordProbs> right_words;
  for (const auto& r : right) right_words.push_back(top_words(r, options.top_m));

  for (const auto& l : left) {
    const auto lw = top_words(l, options.top_m);
    const auto ll = l.label ? normalize_label(*l.label) : std::string{};
    for (std::size_t j = 0; j < right.size(); ++j) {
      const auto& r = right[j];
      std::vector<std::string> shared;
      bool all_probs = true;
      double prob_score = 0.0;
      for (const auto& [word, lp] : lw) {
        auto it = right_words[j].find(word);
        if (it == right_words[j].end()) continue;
        shared.push_back(word);
        if (lp && it->second) {
          prob_score += std::min(*lp, *it->second);
        } else {
          all_probs = false;
        }
      }

      if (!ll.empty() && r.label && ll == normalize_label(*r.label)) {
        labeled.push_back({l.id, r.id, MatchKind::LabelEquality, 1.0, std::move(shared)});
        continue;
      }
      if (shared.size() < options.min_shared) continue;
      const double score = all_probs ? prob_score
                                     : static_cast<double>(shared.size()) / static_cast<double>(options.top_m);
      overlap.push_back({l.id, r.id, MatchKind::WordOverlap, score, std::move(shared)});
    }
  }

  auto by_ids = [](const TopicMatch& a, const TopicMatch& b) {
    if (a.left_id != b.left_id) return IdLess{}(a.left_id, b.left_id);
    return IdLess{}(a.right_id, b.right_id);
  };
  std::sort(labeled.begin(), labeled.end(), by_ids);
  std::sort(overlap.begin(), overlap.end(), [&by_ids](const TopicMatch& a, const TopicMatch& b) {
    if (a.score != b.score) return a.score > b.score;
    return by_ids(a, b);
  });
  labeled.insert(labeled.end(), std::make_move_iterator(overlap.begin()), std::make_move_iterator(overlap.end()));
  return labeled;
}

std::string matches_csv(const std::vector<TopicMatch>& matches, std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  csv::write_row(out, {"left_id", "right_id", "matched_by", "score", "shared_words"});
  for (const auto& m : matches) {
    std::string words;
    for (const auto& w : m.shared_words) words += (words.empty() ? "" : " ") + w;
    csv::write_row(out, {m.left_id, m.right_id, std::string(to_string(m.matched_by)), fmt::format("{:.6f}", m.score),
                         words});
  }
  return out.str();
}

std::vector<Decision> draft_decisions(const std::vector<TopicMatch>& matches) {
  std::vector<Decision> out;
  for (const auto& m : matches) {
    if (m.matched_by == MatchKind::LabelEquality) {
      out.push_back({m.left_id, m.right_id, Verdict::Accept, "same label"});
    } else {
      out.push_back({m.left_id, m.right_id, Verdict::Reject,
                     fmt::format("review: {} shared words", m.shared_words.size())});
    }
  }
  return out;
}

std::string decisions_csv(const std::vector<Decision>& decisions) {
  std::ostringstream out;
  csv::write_row(out, {"left_id", "right_id", "verdict", "note"});
  for (const auto& d : decisions) {
    csv::write_row(out, {d.left_id, d.right_id, d.verdict == Verdict::Accept ? "accept" : "reject", d.note});
  }
  return out.str();
}

std::vector<Decision> parse_decisions(std::string_view text) {
  const auto rows = csv::parse(text);
  std::vector<Decision> out;
  if (rows.empty()) return out;
  const auto& header = rows.front();
  const int c_left = csv::column(header, "left_id");
  const int c_right = csv::column(header, "right_id");
  const int c_verdict = csv::column(header, "verdict");
  const int c_note = csv::column(header, "note");
  if (c_left < 0 || c_right < 0 || c_verdict < 0) {
    throw Error("parse", "decisions file needs left_id, right_id and verdict columns");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto cell = [&row](int c) {
      return c >= 0 && static_cast<std::size_t>(c) < row.size() ? std::string(trim(row[c])) : std::string{};
    };
    Decision d{cell(c_left), cell(c_right), Verdict::Reject, cell(c_note)};
    const auto verdict = to_lower(cell(c_verdict));
    if (verdict == "accept") {
      d.verdict = Verdict::Accept;
    } else if (verdict != "reject") {
      throw Error("parse", fmt::format("decisions row {}: verdict must be accept or reject, got '{}'", r + 1, verdict));
    }
    if (d.left_id.empty() || d.right_id.empty()) throw Error("parse", fmt::format("decisions row {}: empty id", r + 1));
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Decision> read_decisions(const std::filesystem::path& path) { return parse_decisions(read_file(path)); }

double MatchSummary::left_coverage() const {
  return left_total == 0 ? 0.0 : static_cast<double>(left_matched) / static_cast<double>(left_total);
}

double MatchSummary::right_coverage() const {
  return right_total == 0 ? 0.0 : static_cast<double>(right_matched) / static_cast<double>(right_total);
}

std::string MatchSummary::to_text() const {
  std::string out;
  out += fmt::format("accepted_pairs = {}\n", accepted_pairs);
  out += fmt::format("left_total = {}\n", left_total);
  out += fmt::format("left_matched = {} ({:.1f}%)\n", left_matched, left_coverage() * 100.0);
  out += fmt::format("left_only = {}\n", left_only);
  out += fmt::format("right_total = {}\n", right_total);
  out += fmt::format("right_matched = {} ({:.1f}%)\n", right_matched, right_coverage() * 100.0);
  out += fmt::format("right_only = {}\n", right_only);
  return out;
}

MatchSummary match_summary(const std::vector<Decision>& decisions, std::optional<std::size_t> left_total,
                           std::optional<std::size_t> right_total) {
  std::set<std::string> left_seen, right_seen, left_matched, right_matched;
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& d : decisions) {
    left_seen.insert(d.left_id);
    right_seen.insert(d.right_id);
    if (d.verdict != Verdict::Accept) continue;
    pairs.emplace(d.left_id, d.right_id);
    left_matched.insert(d.left_id);
    right_matched.insert(d.right_id);
  }
  MatchSummary s;
  s.accepted_pairs = pairs.size();
  s.left_total = left_total.value_or(left_seen.size());
  s.right_total = right_total.value_or(right_seen.size());
  if (left_matched.size() > s.left_total || right_matched.size() > s.right_total) {
    throw InvalidArgument("decisions reference more topics than the given totals");
  }
  s.left_matched = left_matched.size();
  s.right_matched = right_matched.size();
  s.left_only = s.left_total - s.left_matched;
  s.right_only = s.right_total - s.right_matched;
  return s;
}

}  // namespace qamine::analysis
