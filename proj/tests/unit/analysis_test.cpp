// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <doctest.h>

#include <algorithm>
#include <set>

#include "qamine/error.hpp"
#include "qamine/topic_analysis.hpp"
#include "test_support.hpp"

using namespace qamine;
using namespace qamine::analysis;
using lda::TopicSummary;

namespace {

MatchTopic topic(std::string id, std::optional<std::string> label, std::vector<std::string> words) {
  MatchTopic t{std::move(id), std::move(label), {}};
  for (auto& w : words) t.words.emplace_back(std::move(w), std::nullopt);
  return t;
}

std::set<std::pair<std::string, std::string>> label_pairs(const std::vector<TopicMatch>& ms, bool swap) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& m : ms) {
    if (m.matched_by != MatchKind::LabelEquality) continue;
    out.insert(swap ? std::pair{m.right_id, m.left_id} : std::pair{m.left_id, m.right_id});
  }
  return out;
}

// Documents whose dominant topic is known: with K=2 and a long run, the
// cluster corpus separates cleanly.
struct RelevanceFixture {
  lda::TopicModel model;
  CorpusStore store;

  RelevanceFixture() {
    auto docs = testing::two_cluster_corpus(40, 10, 12, 2);
    lda::LdaConfig c;
    c.num_topics = 2;
    c.iterations = 100;
    c.seed = 5;
    model = lda::train(docs, c);
    std::vector<Record> records;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const std::int64_t views = 9990 + static_cast<std::int64_t>(d);  // 9990..10029
      const std::int64_t score = static_cast<std::int64_t>(d % 15);     // 0..14
      records.push_back(testing::question(docs[d].question_id, {"xamarin"}, "t", views, score));
    }
    store.put_records(std::move(records));
  }
};

}  // namespace

TEST_CASE("labels attach by id; unlabeled topics are reported") {
  std::vector<TopicSummary> s{{0, {}, 3, {}}, {1, {}, 2, {}}, {2, {}, 1, {}}};
  const auto labels = parse_label_csv("topic_id,label\n0,User Interface (Table)\n2,Memory\n", "dump");
  const auto out = apply_labels(s, labels);
  CHECK(out.summaries[0].label == "User Interface (Table)");
  CHECK_FALSE(out.summaries[1].label.has_value());
  CHECK(out.unlabeled == std::vector<std::size_t>{1});

  const auto bad = parse_label_csv("topic_id,label\n7,Ghost\n9,Ghost too\n");
  try {
    apply_labels(s, bad);
    FAIL("expected an error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("7,9") != std::string::npos);
  }
}

TEST_CASE("equal labels match regardless of case and spacing") {
  const std::vector<MatchTopic> left{topic("28", "User Interface (Table)", {"table", "cell"}),
                                     topic("3", std::nullopt, {"a"})};
  const std::vector<MatchTopic> right{topic("40", "user  interface (table)", {"list", "view"})};
  const auto ms = match_topics(left, right);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].left_id == "28");
  CHECK(ms[0].right_id == "40");
  CHECK(ms[0].matched_by == MatchKind::LabelEquality);
  CHECK(ms[0].score == 1.0);
}

TEST_CASE("label matching is symmetric") {
  const std::vector<MatchTopic> left{topic("1", "Layout", {}), topic("2", "Memory", {}), topic("3", "Layout", {})};
  const std::vector<MatchTopic> right{topic("a", "layout", {}), topic("b", "Other", {}), topic("c", "MEMORY", {})};
  CHECK(label_pairs(match_topics(left, right), false) == label_pairs(match_topics(right, left), true));
}

TEST_CASE("shared top words produce overlap candidates") {
  const std::vector<MatchTopic> left{topic("8", std::nullopt, {"memory", "leak", "image", "android", "bitmap"})};
  const std::vector<MatchTopic> right{topic("16", std::nullopt, {"leak", "memory", "page", "image"}),
                                      topic("17", std::nullopt, {"json", "http", "rest"})};
  MatchOptions o;
  o.min_shared = 2;
  const auto ms = match_topics(left, right, o);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].matched_by == MatchKind::WordOverlap);
  CHECK(ms[0].right_id == "16");
  CHECK(ms[0].shared_words == std::vector<std::string>{"image", "leak", "memory"});
  CHECK(ms[0].score == doctest::Approx(3.0 / 20.0));

  o.min_shared = 4;
  CHECK(match_topics(left, right, o).empty());
}

TEST_CASE("probabilities weight the overlap score") {
  MatchTopic l{"1", std::nullopt, {{"memory", 0.3}, {"leak", 0.2}, {"gc", 0.1}}};
  MatchTopic r{"2", std::nullopt, {{"memory", 0.1}, {"leak", 0.4}, {"gc", 0.05}}};
  const auto ms = match_topics({l}, {r});
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].score == doctest::Approx(0.1 + 0.2 + 0.05));
}

TEST_CASE("top_m limits the compared words") {
  const std::vector<MatchTopic> left{topic("1", std::nullopt, {"a", "b", "c", "d"})};
  const std::vector<MatchTopic> right{topic("2", std::nullopt, {"x", "y", "c", "d"})};
  MatchOptions o{2, 1};
  CHECK(match_topics(left, right, o).empty());
  o.top_m = 4;
  CHECK(match_topics(left, right, o).size() == 1);
}

TEST_CASE("external topic tables") {
  const auto set = parse_external_topics(
      "id,label,word,probability\nG1,Layout,layout,0.2\nG1,,view,\nG2,Network,http,0.1\n");
  REQUIRE(set.topics.size() == 2);
  CHECK(set.topics[0].label == "Layout");
  CHECK(set.topics[0].words.size() == 2);
  CHECK(set.topics[0].words[1].second == std::nullopt);
  CHECK_THROWS_AS(parse_external_topics("id,label,word\nG1,A,x\nG1,B,y\n"), Error);
}

TEST_CASE("decisions round trip and summary") {
  std::vector<Decision> ds{{"1", "a", Verdict::Accept, "same label"},
                           {"1", "b", Verdict::Accept, ""},
                           {"2", "b", Verdict::Reject, "no"},
                           {"3", "c", Verdict::Accept, "x, y"}};
  CHECK(parse_decisions(decisions_csv(ds)) == ds);
  const auto s = match_summary(ds, 4, 5);
  CHECK(s.accepted_pairs == 3);
  CHECK(s.left_matched == 2);
  CHECK(s.right_matched == 3);
  CHECK(s.left_only == 2);
  CHECK(s.right_only == 2);
  CHECK(s.left_coverage() == 0.5);
  CHECK_THROWS_AS(parse_decisions("left_id,right_id,verdict\n1,2,maybe\n"), Error);
}

TEST_CASE("relevance thresholds are inclusive") {
  RelevanceFixture f;
  for (std::size_t k = 0; k < 2; ++k) {
    for (const auto& q : relevant_questions(f.model, f.store, Source::StackExchangeDump, k)) {
      CHECK(q.views >= 10000);
      CHECK(*q.score >= 10);
    }
  }
  // Exactly at the boundary: document 10 has views 10000 and score 10.
  const auto t = lda::dominant_topic(f.model, 10);
  const auto qs = relevant_questions(f.model, f.store, Source::StackExchangeDump, t);
  CHECK(std::any_of(qs.begin(), qs.end(), [](const RelevantQuestion& q) { return q.id == "d10"; }));
  // Document 9 has 9999 views.
  const auto t9 = lda::dominant_topic(f.model, 9);
  const auto qs9 = relevant_questions(f.model, f.store, Source::StackExchangeDump, t9);
  CHECK_FALSE(std::any_of(qs9.begin(), qs9.end(), [](const RelevantQuestion& q) { return q.id == "d9"; }));

  CHECK_THROWS_AS(relevant_questions(f.model, f.store, Source::StackExchangeDump, 2), InvalidArgument);
}

TEST_CASE("relevance: monotone, dominant-topic subset, sorted") {
  RelevanceFixture f;
  const auto theta = lda::theta(f.model);
  for (std::size_t k = 0; k < 2; ++k) {
    RelevanceOptions loose{0, 0};
    const auto all = relevant_questions(f.model, f.store, Source::StackExchangeDump, k, loose);
    std::set<std::string> dominant;
    for (std::size_t d = 0; d < theta.rows; ++d) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < theta.cols; ++j) best = theta(d, j) > theta(d, best) ? j : best;
      if (best == k) dominant.insert(f.model.doc_ids[d]);
    }
    CHECK(all.size() == dominant.size());
    std::set<std::string> prev;
    for (const auto& q : all) prev.insert(q.id);
    for (std::int64_t views = 9990; views <= 10030; views += 5) {
      for (std::int64_t score = 0; score <= 15; score += 3) {
        const auto qs = relevant_questions(f.model, f.store, Source::StackExchangeDump, k, {views, score});
        for (const auto& q : qs) {
          CHECK(dominant.contains(q.id));
          if (score >= 3) {
            const auto looser =
                relevant_questions(f.model, f.store, Source::StackExchangeDump, k, {views, score - 3});
            CHECK(std::any_of(looser.begin(), looser.end(), [&](const RelevantQuestion& o) { return o.id == q.id; }));
          }
        }
        CHECK(std::is_sorted(qs.begin(), qs.end(), [](const RelevantQuestion& a, const RelevantQuestion& b) {
          return a.views > b.views;
        }));
      }
    }
  }
}

TEST_CASE("forum questions without a score pass the score threshold") {
  std::vector<text::Document> docs{{"f1", {"a", "b"}}, {"f2", {"a", "c"}}};
  lda::LdaConfig c;
  c.num_topics = 1;
  c.iterations = 2;
  const auto model = lda::train(docs, c);
  CorpusStore store;
  std::vector<Record> records;
  auto q1 = testing::question("f1", {}, "t", 20000, std::nullopt);
  q1.source = Source::ForumArchive;
  auto q2 = testing::question("f2", {}, "t", 9999, std::nullopt);
  q2.source = Source::ForumArchive;
  records.push_back(q1);
  records.push_back(q2);
  store.put_records(std::move(records));
  const auto qs = relevant_questions(model, store, Source::ForumArchive, 0);
  REQUIRE(qs.size() == 1);
  CHECK(qs[0].id == "f1");
}
