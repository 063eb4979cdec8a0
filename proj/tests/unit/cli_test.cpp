// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <doctest.h>

#include <sstream>

#include "qamine/cli.hpp"
#include "qamine/io.hpp"
#include "test_support.hpp"

using namespace qamine;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string small_dump() {
  const char* titles[] = {"Binding a ListView in Xamarin.Forms", "ListView binding with MVVM",
                          "Xamarin.iOS push notifications",  "Push notifications on iOS devices",
                          "Custom renderers for buttons",    "Button renderer colors in Forms"};
  std::string xml = "<posts>\n";
  for (int i = 0; i < 60; ++i) {
    const int id = 100 + 2 * i;
    xml += "<row Id=\"" + std::to_string(id) + "\" PostTypeId=\"1\" ViewCount=\"" + std::to_string(500 * i) +
           "\" Score=\"" + std::to_string(i % 15) + "\" Title=\"" + titles[i % 6] +
           "\" Tags=\"&lt;xamarin&gt;&lt;" + (i % 2 == 0 ? "xamarin.forms" : "xamarin.ios") + "&gt;\" />\n";
    if (i % 3 == 0) {
      xml += "<row Id=\"" + std::to_string(id + 1) + "\" PostTypeId=\"2\" ParentId=\"" + std::to_string(id) + "\" />\n";
    }
  }
  return xml + "</posts>\n";
}

}  // namespace

TEST_CASE("help, version and usage errors") {
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).code == 0);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"train"}).code == 2);

  testing::TempDir dir;
  const auto missing = run({"stats", "--store", (dir / "nope").string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("error: code=usage") != std::string::npos);
}

TEST_CASE("malformed input exits 1 with a parse error") {
  testing::TempDir dir;
  write_file_atomic(dir / "Posts.xml", "<posts><row Id=\"1\"");
  const auto r = run({"ingest-dump", "--store", (dir / "store").string(), "--posts", (dir / "Posts.xml").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("error: code=parse") != std::string::npos);
}

TEST_CASE("dump chain is deterministic for a fixed seed") {
  testing::TempDir dir;
  const auto store = (dir / "store").string();
  write_file_atomic(dir / "Posts.xml", small_dump());
  REQUIRE(run({"ingest-dump", "--store", store, "--posts", (dir / "Posts.xml").string()}).code == 0);
  REQUIRE(run({"filter", "--store", store, "--pattern", "xamarin", "--trt", "0.3", "--tst", "0.01", "--out",
               (dir / "qs.ndjson").string()})
              .code == 0);
  const auto stats = run({"stats", "--store", store, "--question-set", (dir / "qs.ndjson").string()});
  REQUIRE(stats.code == 0);
  CHECK(stats.out.find("question_count = 60") != std::string::npos);
  CHECK(stats.out.find("accepted_count = 0") != std::string::npos);
  REQUIRE(run({"prep", "--store", store, "--question-set", (dir / "qs.ndjson").string(), "--out",
               (dir / "docs.ndjson").string()})
              .code == 0);

  for (const char* run_dir : {"a", "b"}) {
    const auto model = (dir / run_dir / "model.txt").string();
    const auto train = run({"train", "--documents", (dir / "docs.ndjson").string(), "--out", model, "--topics", "3",
                            "--iterations", "50", "--seed", "7"});
    REQUIRE_MESSAGE(train.code == 0, train.err);
    REQUIRE(run({"report", "--model", model, "--top-n", "5", "--out-dir", (dir / run_dir).string()}).code == 0);
    REQUIRE(run({"relevant", "--store", store, "--model", model, "--min-views", "10000", "--min-score", "5",
                 "--out", (dir / run_dir / "relevant.csv").string()})
                .code == 0);
  }
  for (const char* file : {"model.txt", "topics.csv", "nddt.csv", "main_topics.txt", "relevant.csv"}) {
    CHECK_MESSAGE(read_file(dir / "a" / file) == read_file(dir / "b" / file), file);
  }
  CHECK(read_file(dir / "a" / "topics.csv").rfind("# qamine ", 0) == 0);

  const auto other = (dir / "c" / "model.txt").string();
  REQUIRE(run({"train", "--documents", (dir / "docs.ndjson").string(), "--out", other, "--topics", "3",
               "--iterations", "50", "--seed", "8"})
              .code == 0);
  CHECK(read_file(other) != read_file(dir / "a" / "model.txt"));

  const auto match = run({"match", "--left", (dir / "a" / "topics.csv").string(), "--right",
                          (dir / "b" / "topics.csv").string(), "--out", (dir / "m.csv").string(), "--decisions-out",
                          (dir / "d.csv").string()});
  CHECK(match.code == 0);
  CHECK(run({"match", "--left", (dir / "a" / "topics.csv").string(), "--out", (dir / "m.csv").string()}).code == 2);
}

TEST_CASE("pipeline reruns only stale stages") {
  testing::TempDir dir;
  write_file_atomic(dir / "Posts.xml", small_dump());
  write_file_atomic(dir / "run.json", R"({
    "dump": {"posts": "Posts.xml"},
    "filter": {"pattern": "xamarin", "trt_min": 0.3, "tst_min": 0.01},
    "lda": {"num_topics": 3, "iterations": 30, "seed": 3},
    "report": {"top_n": 5}
  })");
  const auto first = run({"pipeline", "--config", (dir / "run.json").string()});
  REQUIRE_MESSAGE(first.code == 0, first.err);
  const auto topics = read_file(dir / "out" / "dump" / "topics.csv");

  const auto second = run({"pipeline", "--config", (dir / "run.json").string()});
  REQUIRE(second.code == 0);
  CHECK(second.err.find("[train-dump] up to date") != std::string::npos);

  std::filesystem::remove(dir / "out" / "dump" / "topics.csv");
  const auto regenerated = run({"pipeline", "--config", (dir / "run.json").string()});
  REQUIRE(regenerated.code == 0);
  CHECK(regenerated.err.find("[report-dump]\n") != std::string::npos);
  CHECK(regenerated.err.find("[train-dump] up to date") != std::string::npos);
  CHECK(read_file(dir / "out" / "dump" / "topics.csv") == topics);

  const auto forced = run({"pipeline", "--config", (dir / "run.json").string(), "--force"});
  REQUIRE(forced.code == 0);
  CHECK(forced.err.find("up to date") == std::string::npos);
  CHECK(read_file(dir / "out" / "dump" / "topics.csv") == topics);

  const auto reseeded = run({"pipeline", "--config", (dir / "run.json").string(), "--seed", "4"});
  REQUIRE(reseeded.code == 0);
  CHECK(reseeded.err.find("[ingest-dump] up to date") != std::string::npos);
  CHECK(reseeded.err.find("[train-dump]\n") != std::string::npos);
}
