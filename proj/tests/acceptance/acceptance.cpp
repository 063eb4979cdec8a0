// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qamine/cli.hpp"
#include "qamine/io.hpp"
#include "qamine/lda.hpp"
#include "qamine/tag_filter.hpp"
#include "qamine/text_prep.hpp"
#include "qamine/topic_analysis.hpp"
#include "stats_oracle.hpp"
#include "test_support.hpp"

using namespace qamine;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

// θ argmax recomputed from the raw counts, ties to the lowest topic.
std::vector<std::size_t> brute_force_dominant(const lda::TopicModel& m) {
  const auto K = m.num_topics();
  const double alpha = m.config.effective_alpha();
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < m.num_docs(); ++d) {
    std::vector<std::int64_t> counts(K, 0);
    for (auto t : m.z[d]) ++counts[static_cast<std::size_t>(t)];
    std::size_t best = 0;
    double best_p = -1.0;
    for (std::size_t k = 0; k < K; ++k) {
      const double p = (static_cast<double>(counts[k]) + alpha) / (static_cast<double>(m.z[d].size()) + K * alpha);
      if (p > best_p) {
        best_p = p;
        best = k;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::string check_nddt(const lda::TopicModel& m) {
  const auto counts = lda::nddt(m);
  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  if (sum != static_cast<std::int64_t>(m.num_docs())) return fmt::format("sum {} != {} documents", sum, m.num_docs());
  std::vector<std::int64_t> oracle(m.num_topics(), 0);
  for (auto k : brute_force_dominant(m)) ++oracle[k];
  if (oracle != counts) return "nddt differs from brute-force argmax";
  return {};
}

// ---------------------------------------------------------------------------

Outcome table_formulas() {
  Outcome o;
  const auto start = Clock::now();
  const auto corpus = testing::table_corpus();
  const auto refs = corpus.refs();
  tags::FilterConfig config;
  const auto initial = tags::expand_initial_tags(config, tags::all_tags(refs));
  const auto stats = tags::compute_tag_stats(refs, initial);
  const double elapsed = seconds_since(start);

  std::map<std::string, tags::TagStats> by_tag;
  for (const auto& s : stats) by_tag[s.tag] = s;
  struct Expect {
    const char* tag;
    double trt_pct;
    double tst_pct;
  };
  for (const auto& e : {Expect{"mvvmcross", 69.52, 8.00}, Expect{"monodevelop", 28.64, 2.78}}) {
    const auto& s = by_tag[e.tag];
    if (std::abs(s.trt * 100 - e.trt_pct) > 0.01 || std::abs(s.tst * 100 - e.tst_pct) > 0.01) {
      o.fail(fmt::format("{}: TRT {:.4f}% TST {:.4f}%", e.tag, s.trt * 100, s.tst * 100));
    }
  }
  for (const auto& tag : initial) {
    if (by_tag[tag].trt != 1.0) o.fail(fmt::format("initial tag {} TRT {}", tag, by_tag[tag].trt));
  }
  if (elapsed >= 1.0) o.fail(fmt::format("took {:.3f}s", elapsed));
  o.note(fmt::format("mvvmcross {:.2f}%/{:.2f}%, monodevelop {:.2f}%/{:.2f}%, {} initial tags at 100%, {:.3f}s",
                     by_tag["mvvmcross"].trt * 100, by_tag["mvvmcross"].tst * 100, by_tag["monodevelop"].trt * 100,
                     by_tag["monodevelop"].tst * 100, initial.size(), elapsed));
  return o;
}

Outcome thresholds() {
  Outcome o;
  const auto corpus = testing::table_corpus();
  const auto refs = corpus.refs();
  tags::FilterConfig config;
  config.trt_min = 0.25;
  config.tst_min = 0.001;
  const auto initial = tags::expand_initial_tags(config, tags::all_tags(refs));
  const auto final_tags = tags::select_final_tags(tags::compute_tag_stats(refs, initial), initial, config);

  std::size_t kept = 0, rejected = 0;
  for (const auto& row : testing::table_rows()) {
    const double trt = static_cast<double>(row.occ_dom) / static_cast<double>(row.occ_all);
    const bool expected = trt >= 0.25;
    if (final_tags.contains(row.tag) != expected) {
      o.fail(fmt::format("{} (TRT {:.2f}%) {}", row.tag, trt * 100, expected ? "not selected" : "selected"));
    }
    (expected ? kept : rejected) += 1;
  }
  if (final_tags.contains("android")) o.fail("android-like tag selected");
  o.note(fmt::format("{} rows selected, {} rejected (android at 1.07%)", kept, rejected));
  return o;
}

Outcome keyword_fallback() {
  Outcome o;
  auto corpus = testing::table_corpus();
  corpus.ids.push_back("29405420");
  corpus.titles.push_back("Xamarin Android Save sms");
  corpus.tags.push_back({"c#", "android", "datetime"});
  const auto set = tags::build_question_set(corpus.refs(), tags::FilterConfig{});
  const auto it = std::find_if(set.entries.begin(), set.entries.end(),
                               [](const tags::QuestionSet::Entry& e) { return e.id == "29405420"; });
  if (it == set.entries.end()) {
    o.fail("29405420 not captured");
  } else if (it->provenance != tags::Provenance::KeywordMatched) {
    o.fail("29405420 captured but not flagged keyword-matched");
  }
  const auto direct = tags::filter_by_keywords(corpus.refs(), set.final_tags, {});
  if (std::find(direct.begin(), direct.end(), "29405420") == direct.end()) o.fail("filter_by_keywords missed it");
  o.note(fmt::format("29405420 keyword-matched; {} keyword-matched in total", set.keyword_matched()));
  return o;
}

Outcome stats_oracle() {
  Outcome o;
  std::mt19937_64 rng(20170601);
  std::uniform_int_distribution<std::size_t> size(1, 10000);
  std::size_t largest = 0;
  for (int trial = 0; trial < 100 && o.pass; ++trial) {
    const auto n = trial == 0 ? 10000 : size(rng);
    largest = std::max(largest, n);
    auto fixture = testing::random_store_fixture(rng, n);
    CorpusStore store;
    const auto records = fixture.records;
    store.put_records(std::move(fixture.records));
    for (auto source : {Source::StackExchangeDump, Source::ForumArchive}) {
      for (bool tech : {false, true}) {
        StatsQuery q;
        q.source = source;
        q.technological_only = tech;
        if (!(store.compute_stats(q) == testing::oracle_stats(records, source, tech))) {
          o.fail(fmt::format("trial {} ({} questions, {}, tech_only={}) differs", trial, n, to_string(source), tech));
        }
      }
    }
  }
  o.note(fmt::format("100 trials, up to {} questions, 4 queries each, exact", largest));
  return o;
}

Outcome lda_validity() {
  Outcome o;
  const auto docs = testing::random_corpus(1000, 1500, 4, 12, 7);
  lda::LdaConfig config;
  config.num_topics = 40;
  config.iterations = 1000;
  config.seed = 11;

  std::size_t violations = 0;
  int sweeps = 0;
  double observer_seconds = 0.0;
  lda::TrainOptions options;
  options.observer = [&](int, const lda::TopicModel& m) {
    const auto start = Clock::now();
    ++sweeps;
    violations += lda::verify_counts(m).size();
    observer_seconds += seconds_since(start);
  };
  const auto start = Clock::now();
  const auto model = lda::train(docs, config, options);
  const double train_seconds = seconds_since(start) - observer_seconds;
  if (sweeps != 1000) o.fail(fmt::format("observer saw {} sweeps", sweeps));
  if (violations != 0) o.fail(fmt::format("{} count invariant violations", violations));
  if (train_seconds >= 30.0) o.fail(fmt::format("training took {:.2f}s", train_seconds));

  double worst = 0.0;
  for (const auto& m : {lda::phi(model), lda::theta(model)}) {
    for (std::size_t r = 0; r < m.rows; ++r) {
      double sum = 0.0;
      for (double p : m.row(r)) sum += p;
      worst = std::max(worst, std::abs(sum - 1.0));
    }
  }
  if (worst > 1e-9) o.fail(fmt::format("row sum off by {:.3g}", worst));

  // K = 1: φ is the smoothed unigram distribution.
  const auto small = testing::random_corpus(150, 300, 3, 10, 3);
  lda::LdaConfig one;
  one.num_topics = 1;
  one.iterations = 5;
  const auto unigram = lda::train(small, one);
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& d : small) {
    for (const auto& t : d.tokens) {
      ++counts[t];
      ++total;
    }
  }
  const auto phi1 = lda::phi(unigram);
  const double V = static_cast<double>(counts.size());
  if (phi1.cols != counts.size()) o.fail("K=1 vocabulary size differs");
  std::size_t w = 0;
  for (const auto& [word, c] : counts) {
    const double expected = (static_cast<double>(c) + one.beta) / (static_cast<double>(total) + V * one.beta);
    if (w >= phi1.cols || unigram.vocabulary[w] != word || phi1(0, w) != expected) {
      o.fail("K=1 phi differs for '" + word + "'");
      break;
    }
    ++w;
  }

  const auto again = lda::train(docs, config);
  if (!(again == model) || lda::model_to_text(again) != lda::model_to_text(model)) o.fail("rerun not bit-identical");

  o.note(fmt::format("1000 docs x 1000 sweeps x K=40 in {:.2f}s, 0 violations, max row-sum error {:.2g}, K=1 exact, "
                     "rerun identical",
                     train_seconds, worst));
  return o;
}

Outcome topic_recovery() {
  Outcome o;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto docs = testing::two_cluster_corpus(200, 20, 12, 100 + seed);
    lda::LdaConfig config;
    config.num_topics = 2;
    config.iterations = 500;
    config.seed = seed;
    const auto model = lda::train(docs, config);
    std::size_t agree = 0;
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
      const auto id = model.doc_ids[d];
      const std::size_t cluster = std::stoul(id.substr(1)) % 2;
      agree += lda::dominant_topic(model, d) == cluster ? 1 : 0;
    }
    const double accuracy =
        static_cast<double>(std::max(agree, model.num_docs() - agree)) / static_cast<double>(model.num_docs());
    per_seed += fmt::format("{}{:.1f}%", per_seed.empty() ? "" : " ", accuracy * 100);
    if (accuracy < 0.95) o.fail(fmt::format("seed {}: {:.1f}%", seed, accuracy * 100));
  }
  o.note("accuracy per seed: " + per_seed);
  return o;
}

Outcome nddt_property() {
  Outcome o;
  std::size_t models = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (int k : {1, 2, 7, 40}) {
      lda::LdaConfig config;
      config.num_topics = k;
      config.iterations = 60;
      config.seed = seed;
      const auto docs = seed % 2 == 0 ? testing::two_cluster_corpus(120, 15, 8, seed)
                                      : testing::random_corpus(180, 400, 1, 12, seed);
      const auto model = lda::train(docs, config);
      ++models;
      if (auto why = check_nddt(model); !why.empty()) o.fail(fmt::format("K={} seed {}: {}", k, seed, why));
    }
  }
  o.note(fmt::format("{} models: sum equals document count, matches brute-force argmax", models));
  return o;
}

Outcome relevance() {
  Outcome o;
  const auto docs = testing::two_cluster_corpus(200, 20, 10, 42);
  lda::LdaConfig config;
  config.num_topics = 2;
  config.iterations = 100;
  const auto model = lda::train(docs, config);

  // Views and scores cluster around the default thresholds.
  std::mt19937_64 rng(5);
  std::vector<Record> records;
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> meta;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::int64_t views = 9995 + static_cast<std::int64_t>(rng() % 11);
    std::int64_t score = 8 + static_cast<std::int64_t>(rng() % 5);
    if (d == 0) views = 10000, score = 10;
    if (d == 1) views = 9999, score = 10;
    if (d == 2) views = 10000, score = 9;
    meta[docs[d].question_id] = {views, score};
    records.push_back(testing::question(docs[d].question_id, {"x"}, "t", views, score));
  }
  CorpusStore store;
  store.put_records(std::move(records));

  const auto dominant = brute_force_dominant(model);
  auto oracle = [&](std::size_t topic, std::int64_t min_views, std::int64_t min_score) {
    std::set<std::string> ids;
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
      const auto& [v, s] = meta[model.doc_ids[d]];
      if (dominant[d] == topic && v >= min_views && s >= min_score) ids.insert(model.doc_ids[d]);
    }
    return ids;
  };
  auto run = [&](std::size_t topic, std::int64_t min_views, std::int64_t min_score) {
    std::set<std::string> ids;
    for (const auto& q :
         analysis::relevant_questions(model, store, Source::StackExchangeDump, topic, {min_views, min_score})) {
      ids.insert(q.id);
    }
    return ids;
  };

  auto selected_anywhere = [&](const std::string& id) {
    return run(0, 10000, 10).contains(id) || run(1, 10000, 10).contains(id);
  };
  if (!selected_anywhere(docs[0].question_id)) o.fail("10000 views / score 10 not selected");
  if (selected_anywhere(docs[1].question_id)) o.fail("9999 views selected");
  if (selected_anywhere(docs[2].question_id)) o.fail("score 9 selected");

  std::size_t grid = 0;
  for (std::size_t topic = 0; topic < 2; ++topic) {
    std::set<std::string> dominant_ids;
    for (std::size_t d = 0; d < model.num_docs(); ++d) {
      if (dominant[d] == topic) dominant_ids.insert(model.doc_ids[d]);
    }
    for (std::int64_t v = 9994; v <= 10006; ++v) {
      for (std::int64_t s = 7; s <= 13; ++s) {
        ++grid;
        const auto got = run(topic, v, s);
        if (got != oracle(topic, v, s)) o.fail(fmt::format("topic {} at ({}, {}) differs from brute force", topic, v, s));
        if (!std::includes(dominant_ids.begin(), dominant_ids.end(), got.begin(), got.end())) {
          o.fail("result outside the dominant topic");
        }
        const auto tighter_v = run(topic, v + 1, s);
        const auto tighter_s = run(topic, v, s + 1);
        if (!std::includes(got.begin(), got.end(), tighter_v.begin(), tighter_v.end()) ||
            !std::includes(got.begin(), got.end(), tighter_s.begin(), tighter_s.end())) {
          o.fail(fmt::format("not monotone at ({}, {})", v, s));
        }
      }
    }
  }
  o.note(fmt::format("inclusive at 10000/10, {} threshold pairs monotone and within the dominant topic", grid));
  return o;
}

Outcome stemming() {
  Outcome o;
  const text::WordSet protected_words{"ios", "xamarin.forms"};
  const std::vector<std::string> in{"ios", "xamarin.forms", "forms", "errors", "activities"};
  const std::vector<std::string> expected{"ios", "xamarin.forms", "form", "error", "activiti"};
  const auto got = text::stem_custom(in, protected_words);
  if (got != expected) o.fail("fixed examples differ");

  std::mt19937_64 rng(99);
  const std::string letters = "abcdefghijklmnopqrstuvwxyzsssss";
  const std::vector<std::string> endings{"", "s", "ss", "sses", "ies", "es", "is", "us", "sss"};
  std::vector<std::string> tokens;
  for (int i = 0; i < 10000; ++i) {
    std::string w;
    const auto len = 1 + rng() % 8;
    for (std::size_t j = 0; j < len; ++j) w.push_back(letters[rng() % letters.size()]);
    tokens.push_back(w + endings[rng() % endings.size()]);
  }
  const auto once = text::stem_custom(tokens, protected_words);
  if (text::stem_custom(once, protected_words) != once) o.fail("not idempotent");
  o.note("ios, xamarin.forms kept; forms->form, errors->error, activities->activiti; idempotent on 10000 tokens");
  return o;
}

Outcome end_to_end() {
  Outcome o;
  const fs::path config = fs::path(QAMINE_FIXTURE_DIR) / "bundled" / "run.json";
  testing::TempDir a, b;
  const std::vector<std::string> artifacts{
      "question_set.ndjson", "tagstats.csv",         "stats.txt",         "stats.json",
      "dump/documents.ndjson", "dump/model.txt",     "dump/topics.csv",   "dump/nddt.csv",
      "dump/main_topics.txt",  "dump/relevant.csv",  "forum/documents.ndjson", "forum/model.txt",
      "forum/topics.csv",      "forum/nddt.csv",     "forum/main_topics.txt",  "forum/relevant.csv",
      "matches.csv",           "decisions.csv",      "match_summary.txt", "reference_matches.csv"};

  double first_seconds = 0.0;
  for (const auto* dir : {&a, &b}) {
    std::ostringstream out, err;
    const auto start = Clock::now();
    const int code = cli::run({"pipeline", "--config", config.string(), "--store", (*dir / "store").string(),
                               "--out", (*dir / "out").string()},
                              out, err);
    if (dir == &a) first_seconds = seconds_since(start);
    if (code != 0) {
      o.fail(fmt::format("pipeline exited {}: {}", code, err.str()));
      return o;
    }
  }
  if (first_seconds >= 60.0) o.fail(fmt::format("took {:.2f}s", first_seconds));

  const auto store = CorpusStore::open_existing(a / "store");
  const auto questions = store.questions(Source::StackExchangeDump).size();
  if (questions != 500) o.fail(fmt::format("fixture has {} dump questions", questions));

  std::size_t identical = 0;
  for (const auto& name : artifacts) {
    const auto pa = a / "out" / name;
    const auto pb = b / "out" / name;
    if (!fs::exists(pa) || !fs::exists(pb)) {
      o.fail("missing " + name);
    } else if (read_file(pa) != read_file(pb)) {
      o.fail(name + " differs between runs");
    } else {
      ++identical;
    }
  }
  o.note(fmt::format("{} dump questions, {} artifacts byte-identical across two runs, first run {:.2f}s", questions,
                     identical, first_seconds));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"tag-formulas", table_formulas},     {"tag-thresholds", thresholds}, {"keyword-fallback", keyword_fallback},
      {"stats-oracle", stats_oracle},       {"lda-validity", lda_validity}, {"topic-recovery", topic_recovery},
      {"nddt", nddt_property},              {"relevance", relevance},       {"stemming", stemming},
      {"end-to-end", end_to_end},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    failures += outcome.pass ? 0 : 1;
    fmt::print("{} {}: {}\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
