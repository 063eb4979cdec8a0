// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <ostream>
#include <unordered_set>

#include "qamine/cli.hpp"
#include "qamine/corpus_store.hpp"
#include "qamine/forum_ingest.hpp"
#include "qamine/io.hpp"
#include "qamine/kernels.hpp"
#include "qamine/se_dump.hpp"
#include "qamine/text_prep.hpp"
#include "qamine/version.hpp"

namespace qamine::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxLoggedDiagnostics = 20;

void log_diagnostics(std::ostream& log, const std::vector<std::string>& diagnostics) {
  for (std::size_t i = 0; i < std::min(diagnostics.size(), kMaxLoggedDiagnostics); ++i) {
    log << "  " << diagnostics[i] << '\n';
  }
  if (diagnostics.size() > kMaxLoggedDiagnostics) {
    log << fmt::format("  ... {} more\n", diagnostics.size() - kMaxLoggedDiagnostics);
  }
}

CorpusStore open_store_for_reading(const fs::path& dir) {
  if (dir.empty()) throw UsageError("no store directory given (use --store or QAMINE_STORE)");
  if (!fs::is_directory(dir)) throw UsageError("store directory does not exist: " + dir.string());
  return CorpusStore::open_existing(dir);
}

void require_file(const fs::path& path, std::string_view what) {
  if (!fs::is_regular_file(path)) throw UsageError(fmt::format("{} not found: {}", what, path.string()));
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

std::string comment_block(std::string_view header, const std::string& body) {
  return "# " + std::string(header) + "\n" + body;
}

}  // namespace

std::string report_header(std::string_view artifact, const json& config) {
  return fmt::format("qamine {} {} config={}", kVersion, artifact, config.dump());
}

void ingest_dump(const IngestDumpOptions& o, std::ostream& log) {
  require_file(o.posts, "posts file");
  if (o.tags) require_file(*o.tags, "tags file");
  auto store = CorpusStore::open(o.store);

  std::vector<Record> records;
  dump::ParseOptions popts;
  popts.keep_body = o.keep_body;
  const auto parsed = dump::parse_posts(
      o.posts, [&records](PostRecord&& p) { records.emplace_back(std::move(p)); }, popts);
  log << fmt::format("parsed {} rows: {} questions, {} answers, {} ignored, {} skipped\n", parsed.rows,
                     parsed.questions, parsed.answers, parsed.ignored, parsed.skipped);
  log_diagnostics(log, parsed.diagnostics);

  const auto summary = store.put_records(std::move(records));
  log << summary.to_text();
  log_diagnostics(log, summary.diagnostics);

  if (o.tags) {
    std::map<std::string, std::int64_t> observed;
    for (const auto* q : store.questions(Source::StackExchangeDump)) {
      for (const auto& t : q->tags) ++observed[t];
    }
    std::vector<std::string> mismatches;
    const auto tag_report = dump::parse_tags(*o.tags, [&](std::string&& name, std::int64_t declared) {
      const auto it = observed.find(name);
      const std::int64_t seen = it == observed.end() ? 0 : it->second;
      if (seen != declared) {
        mismatches.push_back(fmt::format("tag '{}': dump declares {}, store has {}", name, declared, seen));
      }
    });
    log << fmt::format("tags: {} declared, {} with a count differing from the store\n", tag_report.tags,
                       mismatches.size());
    log_diagnostics(log, mismatches);
  }
  store.save();
}

void ingest_forum(const IngestForumOptions& o, std::ostream& log) {
  if (!fs::is_directory(o.archive)) throw UsageError("archive directory not found: " + o.archive.string());
  auto store = CorpusStore::open(o.store);
  const auto report = forum::import_archive(o.archive, store);
  log << report.to_text();
  log_diagnostics(log, report.diagnostics);
  if (!o.technological.empty()) {
    const std::set<std::string> names(o.technological.begin(), o.technological.end());
    for (const auto& w : store.classify_forums(names)) log << "warning: " << w << '\n';
  }
  store.save();
}

void filter(const FilterOptions& o, std::ostream& log) {
  o.config.validate();
  const auto store = open_store_for_reading(o.store);
  const auto refs = tags::question_refs(store.questions(Source::StackExchangeDump));
  const auto set = tags::build_question_set(refs, o.config);
  const auto header = report_header("question_set", o.config.to_json());

  ensure_parent(o.out);
  write_file_atomic(o.out, tags::question_set_to_ndjson(set, json{{"generator", header}}));
  if (o.tagstats) {
    ensure_parent(*o.tagstats);
    write_file_atomic(*o.tagstats, tags::tag_stats_to_csv(set.tag_stats, report_header("tagstats", o.config.to_json())));
  }
  log << fmt::format("initial tags: {}, final tags: {}\n", set.initial_tags.size(), set.final_tags.size());
  log << fmt::format("questions: {} tag-matched ({} via initial tags, {} via other final tags), {} keyword-matched\n",
                     set.tag_matched(), set.initial_tagged, set.other_final_tagged, set.keyword_matched());
}

std::string stats(const StatsOptions& o) {
  const auto store = open_store_for_reading(o.store);
  std::unordered_set<std::string> ids;
  StatsQuery query;
  query.source = o.source;
  query.technological_only = o.technological_only;
  json config{{"source", to_string(o.source)}, {"technological_only", o.technological_only}};
  if (o.question_set) {
    require_file(*o.question_set, "question set");
    const auto set = tags::read_question_set(*o.question_set);
    for (const auto& e : set.entries) ids.insert(e.id);
    query.question_ids = &ids;
    config["question_set_size"] = ids.size();
  }
  const auto s = store.compute_stats(query);
  std::string text;
  if (o.json) {
    json j = s.to_json();
    j["generator"] = report_header("stats", config);
    text = j.dump(2) + "\n";
  } else {
    text = comment_block(report_header("stats", config), s.to_text());
  }
  if (o.out) {
    ensure_parent(*o.out);
    write_file_atomic(*o.out, text);
  }
  return text;
}

void prep(const PrepOptions& o, std::ostream& log) {
  const auto store = open_store_for_reading(o.store);
  std::vector<std::string> ids;
  if (o.question_set) {
    require_file(*o.question_set, "question set");
    for (auto& e : tags::read_question_set(*o.question_set).entries) ids.push_back(std::move(e.id));
  } else {
    for (const auto* q : store.questions(o.source)) {
      if (o.source == Source::ForumArchive) {
        const auto* forum = q->forum_id ? store.find_forum(*q->forum_id) : nullptr;
        if (forum == nullptr || !forum->technological) continue;
      }
      ids.push_back(q->id);
    }
  }

  text::WordSet stoplist = text::default_stoplist();
  if (o.stoplist) {
    require_file(*o.stoplist, "stop word list");
    stoplist = text::load_word_set(*o.stoplist);
  }
  text::WordSet protected_words;
  if (o.protected_words) {
    require_file(*o.protected_words, "protected word list");
    protected_words = text::load_word_set(*o.protected_words);
  }

  const auto batch = text::build_documents(ids, o.source, store, protected_words, stoplist);
  json meta{{"generator", report_header("documents", json{{"source", to_string(o.source)}})},
            {"documents", batch.documents.size()},
            {"excluded", batch.excluded},
            {"missing", batch.missing}};
  ensure_parent(o.out);
  write_file_atomic(o.out, text::documents_to_ndjson(batch.documents, meta));
  log << fmt::format("{} documents, {} excluded (no tokens left), {} not in store\n", batch.documents.size(),
                     batch.excluded.size(), batch.missing.size());
}

void train(const TrainCommandOptions& o, std::ostream& log) {
  require_file(o.documents, "documents file");
  const auto docs = text::read_documents(o.documents);
  const simd::KernelTable* kernels = nullptr;
  if (o.kernel) {
    bool found = false;
    for (auto isa : {simd::Isa::Scalar, simd::Isa::Avx2, simd::Isa::Neon}) {
      if (*o.kernel == simd::to_string(isa)) {
        kernels = &simd::kernels(isa);
        found = true;
      }
    }
    if (!found) throw UsageError("unknown kernel '" + *o.kernel + "'");
  }
  std::vector<std::string> warnings;
  lda::TrainOptions topts;
  topts.kernels = kernels;
  topts.warnings = &warnings;
  const auto model = lda::train(docs, o.config, topts);
  for (const auto& w : warnings) log << "warning: " << w << '\n';
  ensure_parent(o.out);
  lda::save_model(model, o.out);
  log << fmt::format("trained {} topics on {} documents, {} tokens, {} words ({} sweeps, seed {})\n",
                     model.num_topics(), model.num_docs(), model.total_tokens(), model.vocab_size(),
                     o.config.iterations, o.config.seed);
}

void report(const ReportOptions& o, std::ostream& log) {
  require_file(o.model, "model file");
  const auto model = lda::load_model(o.model);
  auto summaries = lda::summarize(model, o.top_n);
  if (o.labels) {
    require_file(*o.labels, "label file");
    auto labeled = analysis::apply_labels(std::move(summaries), analysis::read_label_file(*o.labels));
    summaries = std::move(labeled.summaries);
    if (!labeled.unlabeled.empty()) {
      std::string list;
      for (auto id : labeled.unlabeled) list += (list.empty() ? "" : ",") + std::to_string(id);
      log << fmt::format("warning: {} topics unlabeled: {}\n", labeled.unlabeled.size(), list);
    }
  }
  auto config = model.config.to_json();
  config["top_n"] = o.top_n;

  fs::create_directories(o.out_dir);
  write_file_atomic(o.out_dir / "topics.csv", lda::topics_csv(summaries, report_header("topics", config)));
  write_file_atomic(o.out_dir / "nddt.csv", lda::nddt_csv(summaries, report_header("nddt", config)));
  write_file_atomic(o.out_dir / "main_topics.txt",
                    comment_block(report_header("main_topics", config), lda::main_topics_table(summaries)));
  log << fmt::format("reported {} topics to {}\n", summaries.size(), o.out_dir.string());
}

namespace {

// Seed recorded in the header line of a topics.csv, if any.
json seed_of(std::string_view text) {
  const auto eol = text.find('\n');
  const auto first = text.substr(0, eol);
  const auto at = first.find("config=");
  if (first.rfind("# qamine ", 0) != 0 || at == std::string_view::npos) return nullptr;
  const auto config = json::parse(first.substr(at + 7), nullptr, false);
  return config.is_object() && config.contains("seed") ? config["seed"] : json(nullptr);
}

std::vector<analysis::MatchTopic> load_side(const fs::path& topics, const std::optional<fs::path>& labels,
                                            json& seed) {
  require_file(topics, "topics file");
  const auto text = read_file(topics);
  seed = seed_of(text);
  auto summaries = lda::read_topics_csv(text);
  if (labels) {
    require_file(*labels, "label file");
    summaries = analysis::apply_labels(std::move(summaries), analysis::read_label_file(*labels)).summaries;
  }
  return analysis::to_match_topics(summaries);
}

}  // namespace

void match(const MatchCommandOptions& o, std::ostream& log) {
  if (o.right.has_value() == o.right_external.has_value()) {
    throw UsageError("give exactly one of --right and --right-external");
  }
  if (o.right_external && o.right_labels) throw UsageError("--right-labels applies only to --right");
  json left_seed, right_seed;
  const auto left = load_side(o.left, o.left_labels, left_seed);
  std::vector<analysis::MatchTopic> right;
  if (o.right) {
    right = load_side(*o.right, o.right_labels, right_seed);
  } else {
    require_file(*o.right_external, "reference topics file");
    right = analysis::read_external_topics(*o.right_external).topics;
  }

  const auto matches = analysis::match_topics(left, right, o.match);
  const json config{{"top_m", o.match.top_m},
                    {"min_shared", o.match.min_shared},
                    {"left_seed", left_seed},
                    {"right_seed", right_seed}};
  ensure_parent(o.out);
  write_file_atomic(o.out, analysis::matches_csv(matches, report_header("matches", config)));
  const auto labeled = std::count_if(matches.begin(), matches.end(), [](const analysis::TopicMatch& m) {
    return m.matched_by == analysis::MatchKind::LabelEquality;
  });
  log << fmt::format("{} candidates: {} by label, {} by shared words\n", matches.size(), labeled,
                     matches.size() - static_cast<std::size_t>(labeled));

  if (o.decisions_out) {
    if (fs::exists(*o.decisions_out)) {
      log << "keeping existing decisions file " << o.decisions_out->string() << '\n';
    } else {
      ensure_parent(*o.decisions_out);
      write_file_atomic(*o.decisions_out, analysis::decisions_csv(analysis::draft_decisions(matches)));
    }
  }
  const auto decisions_path = o.decisions ? o.decisions : o.decisions_out;
  if (decisions_path) {
    require_file(*decisions_path, "decisions file");
    const auto summary = analysis::match_summary(analysis::read_decisions(*decisions_path), left.size(), right.size());
    const auto text = comment_block(report_header("match_summary", config), summary.to_text());
    if (o.summary_out) {
      ensure_parent(*o.summary_out);
      write_file_atomic(*o.summary_out, text);
    }
    log << summary.to_text();
  }
}

void relevant(const RelevantOptions& o, std::ostream& log) {
  const auto store = open_store_for_reading(o.store);
  require_file(o.model, "model file");
  const auto model = lda::load_model(o.model);
  const json config{{"source", to_string(o.source)},
                    {"min_views", o.relevance.min_views},
                    {"min_score", o.relevance.min_score},
                    {"seed", model.config.seed}};
  std::string body;
  std::size_t total = 0;
  auto append = [&](std::size_t topic) {
    const auto qs = analysis::relevant_questions(model, store, o.source, topic, o.relevance);
    auto csv = analysis::relevant_csv(qs, topic, {});
    // Keep a single header row across topics.
    if (!body.empty()) csv.erase(0, csv.find('\n') + 1);
    body += csv;
    total += qs.size();
  };
  if (o.topic) {
    append(*o.topic);
  } else {
    for (std::size_t k = 0; k < model.num_topics(); ++k) append(k);
  }
  ensure_parent(o.out);
  write_file_atomic(o.out, comment_block(report_header("relevant", config), body));
  log << fmt::format("{} relevant questions\n", total);
}

}  // namespace qamine::cli
