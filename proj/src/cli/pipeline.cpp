// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <ostream>

#include "qamine/cli.hpp"
#include "qamine/io.hpp"

namespace qamine::cli {

using nlohmann::json;

namespace {

std::optional<fs::path> optional_path(const json& j, std::string_view key, const fs::path& base) {
  if (!j.is_object()) return std::nullopt;
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  const fs::path p = it->get<std::string>();
  return p.is_absolute() ? p : base / p;
}

json path_json(const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); }

json section(const json& j, std::string_view key) {
  const auto it = j.find(key);
  return it == j.end() ? json::object() : *it;
}

// Identity of the files a stage reads; a change forces the stage to rerun.
json fingerprint(const std::vector<fs::path>& inputs) {
  json out = json::array();
  for (const auto& p : inputs) {
    std::error_code ec;
    const auto size = fs::is_regular_file(p, ec) ? static_cast<std::int64_t>(fs::file_size(p, ec)) : -1;
    const auto mtime = fs::exists(p, ec) ? fs::last_write_time(p, ec).time_since_epoch().count() : 0;
    out.push_back(json{p.string(), size, mtime});
  }
  return out;
}

class StageRunner {
 public:
  StageRunner(fs::path stamp_dir, bool force, std::ostream& log)
      : stamp_dir_(std::move(stamp_dir)), force_(force), log_(log) {}

  template <class Fn>
  void run(const std::string& name, const json& config, const std::vector<fs::path>& inputs,
           const std::vector<fs::path>& outputs, Fn&& fn) {
    const json stamp{{"config", config}, {"inputs", fingerprint(inputs)}};
    const auto stamp_path = stamp_dir_ / (name + ".json");
    bool fresh = !force_ && fs::exists(stamp_path);
    for (const auto& o : outputs) fresh = fresh && fs::exists(o);
    if (fresh) {
      try {
        fresh = json::parse(read_file(stamp_path)) == stamp;
      } catch (const json::exception&) {
        fresh = false;
      }
    }
    if (fresh) {
      log_ << "[" << name << "] up to date\n";
      return;
    }
    log_ << "[" << name << "]\n";
    fn();
    fs::create_directories(stamp_dir_);
    // Outputs may have been rewritten; record inputs as they were read.
    write_file_atomic(stamp_path, stamp.dump() + "\n");
  }

 private:
  fs::path stamp_dir_;
  bool force_;
  std::ostream& log_;
};

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw UsageError("pipeline config must be a JSON object");
  PipelineConfig c;
  c.store_dir = optional_path(j, "store_dir", base_dir).value_or(base_dir / "store");
  c.out_dir = optional_path(j, "out_dir", base_dir).value_or(base_dir / "out");

  const auto dump = section(j, "dump");
  c.dump_posts = optional_path(dump, "posts", base_dir);
  c.dump_tags = optional_path(dump, "tags", base_dir);

  const auto forum = section(j, "forum");
  c.forum_archive = optional_path(forum, "archive", base_dir);
  c.technological_forums = forum.value("technological_forums", std::vector<std::string>{});

  const auto filter = section(j, "filter");
  c.filter.initial_pattern = filter.value("pattern", c.filter.initial_pattern);
  c.filter.trt_min = filter.value("trt_min", c.filter.trt_min);
  c.filter.tst_min = filter.value("tst_min", c.filter.tst_min);

  const auto text = section(j, "text");
  c.stoplist = optional_path(text, "stoplist", base_dir);
  c.protected_words = optional_path(text, "protected", base_dir);

  c.lda = lda::LdaConfig::from_json(section(j, "lda"));

  const auto report = section(j, "report");
  c.top_n = report.value("top_n", c.top_n);
  c.dump_labels = optional_path(report, "dump_labels", base_dir);
  c.forum_labels = optional_path(report, "forum_labels", base_dir);

  const auto match = section(j, "match");
  c.reference_topics = optional_path(match, "reference_topics", base_dir);
  c.match.top_m = match.value("top_m", c.match.top_m);
  c.match.min_shared = match.value("min_shared", c.match.min_shared);

  const auto rel = section(j, "relevant");
  c.relevance.min_views = rel.value("min_views", c.relevance.min_views);
  c.relevance.min_score = rel.value("min_score", c.relevance.min_score);
  return c;
}

json PipelineConfig::to_json() const {
  return json{
      {"store_dir", store_dir.string()},
      {"out_dir", out_dir.string()},
      {"dump", {{"posts", path_json(dump_posts)}, {"tags", path_json(dump_tags)}}},
      {"forum", {{"archive", path_json(forum_archive)}, {"technological_forums", technological_forums}}},
      {"filter", filter.to_json()},
      {"text", {{"stoplist", path_json(stoplist)}, {"protected", path_json(protected_words)}}},
      {"lda", lda.to_json()},
      {"report", {{"top_n", top_n}, {"dump_labels", path_json(dump_labels)}, {"forum_labels", path_json(forum_labels)}}},
      {"match",
       {{"reference_topics", path_json(reference_topics)}, {"top_m", match.top_m}, {"min_shared", match.min_shared}}},
      {"relevant", {{"min_views", relevance.min_views}, {"min_score", relevance.min_score}}},
  };
}

void PipelineConfig::validate() const {
  if (!dump_posts && !forum_archive) throw UsageError("pipeline config names neither a dump nor a forum archive");
  if (dump_tags && !dump_posts) throw UsageError("dump.tags given without dump.posts");
  auto need_file = [](const std::optional<fs::path>& p, std::string_view what) {
    if (p && !fs::is_regular_file(*p)) throw UsageError(fmt::format("{} not found: {}", what, p->string()));
  };
  need_file(dump_posts, "dump.posts");
  need_file(dump_tags, "dump.tags");
  need_file(stoplist, "text.stoplist");
  need_file(protected_words, "text.protected");
  need_file(dump_labels, "report.dump_labels");
  need_file(forum_labels, "report.forum_labels");
  need_file(reference_topics, "match.reference_topics");
  if (forum_archive && !fs::is_directory(*forum_archive)) {
    throw UsageError("forum.archive not found: " + forum_archive->string());
  }
  filter.validate();
  lda.validate();
}

void pipeline(const PipelineConfig& c, bool force, std::ostream& log) {
  c.validate();
  const auto& out = c.out_dir;
  fs::create_directories(out);
  StageRunner stages(out / ".stamps", force, log);

  const auto store_posts = c.store_dir / "posts.ndjson";
  const auto store_forums = c.store_dir / "forums.ndjson";
  std::vector<fs::path> store_files{store_posts, store_forums, c.store_dir / "comments.ndjson",
                                    c.store_dir / "users.ndjson"};

  if (c.dump_posts) {
    std::vector<fs::path> inputs{*c.dump_posts};
    if (c.dump_tags) inputs.push_back(*c.dump_tags);
    stages.run("ingest-dump", json{{"posts", c.dump_posts->string()}, {"tags", path_json(c.dump_tags)}}, inputs,
               {store_posts}, [&] { ingest_dump({c.store_dir, *c.dump_posts, c.dump_tags, true}, log); });
  }
  if (c.forum_archive) {
    std::vector<fs::path> pages;
    for (const auto& entry : fs::directory_iterator(*c.forum_archive)) pages.push_back(entry.path());
    std::sort(pages.begin(), pages.end());
    stages.run("ingest-forum",
               json{{"archive", c.forum_archive->string()}, {"technological_forums", c.technological_forums}},
               pages, {store_forums},
               [&] { ingest_forum({c.store_dir, *c.forum_archive, c.technological_forums}, log); });
  }

  struct Side {
    Source source;
    fs::path dir;
    std::optional<fs::path> question_set;
    std::optional<fs::path> labels;
  };
  std::vector<Side> sides;

  if (c.dump_posts) {
    const auto qset = out / "question_set.ndjson";
    const auto tagstats = out / "tagstats.csv";
    stages.run("filter", c.filter.to_json(), store_files, {qset, tagstats},
               [&] { filter({c.store_dir, c.filter, qset, tagstats}, log); });
    sides.push_back({Source::StackExchangeDump, out / "dump", qset, c.dump_labels});
  }
  if (c.forum_archive) sides.push_back({Source::ForumArchive, out / "forum", std::nullopt, c.forum_labels});

  const auto stats_txt = out / "stats.txt";
  const auto stats_js = out / "stats.json";
  std::vector<fs::path> stats_inputs = store_files;
  if (c.dump_posts) stats_inputs.push_back(out / "question_set.ndjson");
  stages.run("stats", json{{"sources", sides.size()}}, stats_inputs, {stats_txt, stats_js}, [&] {
    std::string text;
    json j = json::object();
    for (const auto& side : sides) {
      StatsOptions so;
      so.store = c.store_dir;
      so.source = side.source;
      so.question_set = side.question_set;
      so.technological_only = side.source == Source::ForumArchive;
      text += stats(so);
      so.json = true;
      j[std::string(to_string(side.source))] = json::parse(stats(so));
    }
    write_file_atomic(stats_txt, text);
    write_file_atomic(stats_js, j.dump(2) + "\n");
  });

  for (const auto& side : sides) {
    const auto name = std::string(to_string(side.source));
    const auto docs = side.dir / "documents.ndjson";
    const auto model = side.dir / "model.txt";
    const auto relevant_csv = side.dir / "relevant.csv";

    std::vector<fs::path> prep_inputs = store_files;
    if (side.question_set) prep_inputs.push_back(*side.question_set);
    if (c.stoplist) prep_inputs.push_back(*c.stoplist);
    if (c.protected_words) prep_inputs.push_back(*c.protected_words);
    stages.run("prep-" + name, json{{"stoplist", path_json(c.stoplist)}, {"protected", path_json(c.protected_words)}},
               prep_inputs, {docs},
               [&] { prep({c.store_dir, side.source, side.question_set, c.stoplist, c.protected_words, docs}, log); });

    stages.run("train-" + name, c.lda.to_json(), {docs}, {model},
               [&] { train({docs, model, c.lda, std::nullopt}, log); });

    std::vector<fs::path> report_inputs{model};
    if (side.labels) report_inputs.push_back(*side.labels);
    stages.run("report-" + name, json{{"top_n", c.top_n}, {"labels", path_json(side.labels)}}, report_inputs,
               {side.dir / "topics.csv", side.dir / "nddt.csv", side.dir / "main_topics.txt"},
               [&] { report({model, side.labels, c.top_n, side.dir}, log); });

    std::vector<fs::path> rel_inputs = store_files;
    rel_inputs.push_back(model);
    stages.run("relevant-" + name, json{{"min_views", c.relevance.min_views}, {"min_score", c.relevance.min_score}},
               rel_inputs, {relevant_csv},
               [&] { relevant({c.store_dir, side.source, model, std::nullopt, c.relevance, relevant_csv}, log); });
  }

  const json match_config{{"top_m", c.match.top_m}, {"min_shared", c.match.min_shared}};
  auto with_labels = [](std::vector<fs::path> inputs, const std::optional<fs::path>& labels) {
    if (labels) inputs.push_back(*labels);
    return inputs;
  };
  if (sides.size() == 2) {
    MatchCommandOptions mo;
    mo.left = sides[0].dir / "topics.csv";
    mo.left_labels = sides[0].labels;
    mo.right = sides[1].dir / "topics.csv";
    mo.right_labels = sides[1].labels;
    mo.match = c.match;
    mo.out = out / "matches.csv";
    const auto inputs = with_labels(with_labels({mo.left, *mo.right}, mo.left_labels), mo.right_labels);
    // The draft is written once; later runs summarize whatever the analyst made of it.
    const auto decisions = out / "decisions.csv";
    auto draft = mo;
    draft.decisions_out = decisions;
    stages.run("match", match_config, inputs, {mo.out, decisions}, [&] { match(draft, log); });

    auto summarize = mo;
    summarize.decisions = decisions;
    summarize.summary_out = out / "match_summary.txt";
    auto summary_inputs = inputs;
    summary_inputs.push_back(decisions);
    stages.run("match-summary", match_config, summary_inputs, {*summarize.summary_out},
               [&] { match(summarize, log); });
  }
  if (c.reference_topics) {
    MatchCommandOptions mo;
    mo.left = sides[0].dir / "topics.csv";
    mo.left_labels = sides[0].labels;
    mo.right_external = c.reference_topics;
    mo.match = c.match;
    mo.out = out / "reference_matches.csv";
    stages.run("match-reference", match_config, with_labels({mo.left, *c.reference_topics}, mo.left_labels),
               {mo.out}, [&] { match(mo, log); });
  }
}

}  // namespace qamine::cli
