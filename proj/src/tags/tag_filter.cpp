// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/tag_filter.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/io.hpp"
#include "qamine/strings.hpp"

namespace qamine::tags {

using nlohmann::json;

namespace {

bool like_match(std::string_view pattern, std::string_view text) {
  // Iterative LIKE with '%' only; backtracks to the last '%'.
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '%') {
      star = p++;
      mark = t;
    } else if (p < pattern.size() && pattern[p] == text[t]) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '%') ++p;
  return p == pattern.size();
}

bool is_separator(char c) { return c == '.' || c == '-'; }

// Does `kw` match `text` starting exactly at `t`?
bool keyword_at(std::string_view kw, std::size_t k, std::string_view text, std::size_t t) {
  if (k == kw.size()) return true;
  if (is_separator(kw[k])) {
    if (keyword_at(kw, k + 1, text, t)) return true;  // nothing
    if (t < text.size() && (text[t] == ' ' || text[t] == kw[k])) return keyword_at(kw, k + 1, text, t + 1);
    return false;
  }
  return t < text.size() && text[t] == kw[k] && keyword_at(kw, k + 1, text, t + 1);
}

Provenance provenance_from(std::string_view s) {
  if (s == "tag") return Provenance::TagMatched;
  if (s == "keyword") return Provenance::KeywordMatched;
  throw Error("parse", "unknown provenance '" + std::string(s) + "'");
}

}  // namespace

void FilterConfig::validate() const {
  if (!(trt_min > 0.0 && trt_min <= 1.0)) throw InvalidArgument(fmt::format("trt_min must be in (0,1], got {}", trt_min));
  if (!(tst_min > 0.0 && tst_min <= 1.0)) throw InvalidArgument(fmt::format("tst_min must be in (0,1], got {}", tst_min));
  if (initial_pattern.empty()) throw InvalidArgument("initial pattern is empty");
}

json FilterConfig::to_json() const {
  return json{{"pattern", initial_pattern}, {"trt_min", trt_min}, {"tst_min", tst_min}};
}

std::vector<QuestionRef> question_refs(const std::vector<const PostRecord*>& questions) {
  std::vector<QuestionRef> refs;
  refs.reserve(questions.size());
  for (const auto* q : questions) refs.push_back({q->id, q->title, &q->tags});
  return refs;
}

bool pattern_matches(std::string_view pattern, std::string_view tag) {
  const auto p = to_lower(pattern);
  const auto t = to_lower(tag);
  if (p.find('%') == std::string::npos) return t.find(p) != std::string::npos;
  return like_match(p, t);
}

TagSet expand_initial_tags(const FilterConfig& config, const TagSet& all) {
  TagSet initial;
  for (const auto& tag : all) {
    if (pattern_matches(config.initial_pattern, tag)) initial.insert(tag);
  }
  if (initial.empty()) {
    throw InvalidArgument("initial pattern '" + config.initial_pattern + "' matches no tag; nothing to expand from");
  }
  return initial;
}

TagSet all_tags(const std::vector<QuestionRef>& questions) {
  TagSet out;
  for (const auto& q : questions) out.insert(q.tags->begin(), q.tags->end());
  return out;
}

std::vector<TagStats> compute_tag_stats(const std::vector<QuestionRef>& questions, const TagSet& initial) {
  struct Counts {
    std::int64_t all = 0;
    std::int64_t dom = 0;
  };
  std::unordered_map<std::string_view, Counts> counts;
  for (const auto& q : questions) {
    const bool in_domain = std::any_of(q.tags->begin(), q.tags->end(),
                                       [&initial](const std::string& t) { return initial.contains(t); });
    for (const auto& tag : *q.tags) {
      auto& c = counts[tag];
      ++c.all;
      if (in_domain) ++c.dom;
    }
  }

  std::int64_t max_dom = 0;
  for (const auto& [tag, c] : counts) max_dom = std::max(max_dom, c.dom);

  std::vector<TagStats> stats;
  for (const auto& [tag, c] : counts) {
    if (c.dom == 0) continue;
    TagStats s;
    s.tag = std::string(tag);
    s.occ_all = c.all;
    s.occ_dom = c.dom;
    s.trt = static_cast<double>(c.dom) / static_cast<double>(c.all);
    s.tst = static_cast<double>(c.dom) / static_cast<double>(max_dom);
    stats.push_back(std::move(s));
  }
  std::sort(stats.begin(), stats.end(), [](const TagStats& a, const TagStats& b) {
    if (a.occ_dom != b.occ_dom) return a.occ_dom > b.occ_dom;
    return a.tag < b.tag;
  });
  return stats;
}

TagSet select_final_tags(const std::vector<TagStats>& stats, const TagSet& initial, const FilterConfig& config) {
  TagSet out = initial;
  for (const auto& s : stats) {
    if (s.trt >= config.trt_min && s.tst >= config.tst_min) out.insert(s.tag);
  }
  return out;
}

std::vector<std::string> filter_by_tags(const std::vector<QuestionRef>& questions, const TagSet& final_tags) {
  std::vector<std::string> ids;
  std::set<std::string_view> seen;
  for (const auto& q : questions) {
    const bool hit = std::any_of(q.tags->begin(), q.tags->end(),
                                 [&final_tags](const std::string& t) { return final_tags.contains(t); });
    if (hit && seen.insert(q.id).second) ids.emplace_back(q.id);
  }
  return ids;
}

bool title_matches_keyword(std::string_view title, std::string_view tag) {
  const auto text = to_lower(title);
  const auto kw = to_lower(tag);
  if (kw.empty()) return false;
  for (std::size_t t = 0; t < text.size(); ++t) {
    if (keyword_at(kw, 0, text, t)) return true;
  }
  return false;
}

std::vector<std::string> filter_by_keywords(const std::vector<QuestionRef>& questions, const TagSet& final_tags,
                                            const std::set<std::string>& already) {
  if (final_tags.empty()) throw InvalidArgument("keyword filter needs a non-empty final tag set");
  std::vector<std::string> ids;
  std::set<std::string_view> seen;
  for (const auto& q : questions) {
    if (already.contains(std::string(q.id)) || seen.contains(q.id)) continue;
    const bool hit = std::any_of(final_tags.begin(), final_tags.end(),
                                 [&q](const std::string& tag) { return title_matches_keyword(q.title, tag); });
    if (hit) {
      seen.insert(q.id);
      ids.emplace_back(q.id);
    }
  }
  return ids;
}

std::string_view to_string(Provenance p) { return p == Provenance::TagMatched ? "tag" : "keyword"; }

std::set<std::string> QuestionSet::ids() const {
  std::set<std::string> out;
  for (const auto& e : entries) out.insert(e.id);
  return out;
}

QuestionSet build_question_set(const std::vector<QuestionRef>& questions, const FilterConfig& config) {
  config.validate();
  QuestionSet set;
  set.config = config;
  set.initial_tags = expand_initial_tags(config, all_tags(questions));
  set.tag_stats = compute_tag_stats(questions, set.initial_tags);
  set.final_tags = select_final_tags(set.tag_stats, set.initial_tags, config);

  const auto tagged = filter_by_tags(questions, set.final_tags);
  std::set<std::string> already(tagged.begin(), tagged.end());
  for (const auto& q : questions) {
    if (!already.contains(std::string(q.id))) continue;
    const bool initial = std::any_of(q.tags->begin(), q.tags->end(),
                                     [&set](const std::string& t) { return set.initial_tags.contains(t); });
    ++(initial ? set.initial_tagged : set.other_final_tagged);
  }
  for (const auto& id : tagged) set.entries.push_back({id, Provenance::TagMatched});
  for (auto& id : filter_by_keywords(questions, set.final_tags, already)) {
    set.entries.push_back({std::move(id), Provenance::KeywordMatched});
  }
  return set;
}

std::string question_set_to_ndjson(const QuestionSet& set, const json& extra_meta) {
  json meta = extra_meta.is_object() ? extra_meta : json::object();
  meta["kind"] = "question_set";
  meta["config"] = set.config.to_json();
  meta["initial_tags"] = set.initial_tags;
  meta["final_tags"] = set.final_tags;
  meta["initial_tagged"] = set.initial_tagged;
  meta["other_final_tagged"] = set.other_final_tagged;
  meta["tag_matched"] = set.tag_matched();
  meta["keyword_matched"] = set.keyword_matched();
  meta["total"] = set.entries.size();
  std::string out = json{{"meta", meta}}.dump() + "\n";
  for (const auto& e : set.entries) {
    out += json{{"id", e.id}, {"provenance", to_string(e.provenance)}}.dump();
    out.push_back('\n');
  }
  return out;
}

QuestionSet question_set_from_ndjson(std::string_view text) {
  QuestionSet set;
  std::size_t tag_matched = 0;
  for (const auto& line : split(text, '\n')) {
    if (trim(line).empty()) continue;
    const auto j = json::parse(line);
    if (j.contains("meta")) {
      const auto& m = j["meta"];
      if (m.contains("config")) {
        set.config.initial_pattern = m["config"].value("pattern", set.config.initial_pattern);
        set.config.trt_min = m["config"].value("trt_min", set.config.trt_min);
        set.config.tst_min = m["config"].value("tst_min", set.config.tst_min);
      }
      set.initial_tags = m.value("initial_tags", TagSet{});
      set.final_tags = m.value("final_tags", TagSet{});
      set.initial_tagged = m.value("initial_tagged", std::size_t{0});
      set.other_final_tagged = m.value("other_final_tagged", std::size_t{0});
      continue;
    }
    QuestionSet::Entry e{j.at("id").get<std::string>(), provenance_from(j.at("provenance").get<std::string>())};
    if (e.provenance == Provenance::TagMatched) ++tag_matched;
    set.entries.push_back(std::move(e));
  }
  if (set.tag_matched() != tag_matched) {
    // Hand-edited set without meta counts: everything tag-matched is
    // reported as carrying an initial tag.
    set.initial_tagged = tag_matched;
    set.other_final_tagged = 0;
  }
  return set;
}

QuestionSet read_question_set(const std::filesystem::path& path) {
  return question_set_from_ndjson(read_file(path));
}

std::string tag_stats_to_csv(const std::vector<TagStats>& stats, std::string_view header_comment) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  csv::write_row(out, {"tag", "occ_all", "occ_dom", "trt_pct", "tst_pct"});
  for (const auto& s : stats) {
    csv::write_row(out, {s.tag, std::to_string(s.occ_all), std::to_string(s.occ_dom),
                         fmt::format("{:.2f}", s.trt * 100.0), fmt::format("{:.2f}", s.tst * 100.0)});
  }
  return out.str();
}

}  // namespace qamine::tags
