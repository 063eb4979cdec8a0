// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <doctest.h>

#include <random>

#include "qamine/error.hpp"
#include "qamine/corpus_store.hpp"
#include "qamine/strings.hpp"
#include "qamine/text_prep.hpp"
#include "test_support.hpp"

using namespace qamine;
using namespace qamine::text;

using Tokens = std::vector<std::string>;

TEST_CASE("tokenizer keeps dotted names and language suffixes") {
  CHECK(tokenize("How to bind a ListView in Xamarin.Forms?") ==
        Tokens{"how", "to", "bind", "a", "listview", "in", "xamarin.forms"});
  CHECK(tokenize("C# vs C++ on .NET") == Tokens{"c#", "vs", "c++", "on", ".net"});
  CHECK(tokenize("Ends with a dot.") == Tokens{"ends", "with", "a", "dot"});
  CHECK(tokenize("version 1.2.3, really") == Tokens{"version", "1.2.3", "really"});
  CHECK(tokenize("#region and + signs") == Tokens{"region", "and", "signs"});
  CHECK(tokenize("") == Tokens{});
  CHECK(tokenize("!!! ...") == Tokens{});
}

TEST_CASE("plural step") {
  CHECK(stem_plural("forms") == "form");
  CHECK(stem_plural("errors") == "error");
  CHECK(stem_plural("activities") == "activiti");
  CHECK(stem_plural("caresses") == "caress");
  CHECK(stem_plural("class") == "class");
  CHECK(stem_plural("ios") == "io");
  CHECK(stem_plural("is") == "is");
  CHECK(stem_plural("as") == "as");
  CHECK(stem_plural("s") == "s");
  CHECK(stem_plural("data") == "data");
}

TEST_CASE("protected words pass through") {
  const WordSet prot{"ios", "xamarin.forms", "xamarin.ios"};
  CHECK(stem_custom({"ios", "xamarin.forms", "forms", "errors", "activities"}, prot) ==
        Tokens{"ios", "xamarin.forms", "form", "error", "activiti"});
}

TEST_CASE("stemming is idempotent") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> len(1, 10), letter(0, 25), suffix(0, 5);
  const char* suffixes[] = {"", "s", "ss", "ies", "sses", "es"};
  const WordSet prot{"ios", "xamarin.forms"};
  Tokens tokens;
  for (int i = 0; i < 10000; ++i) {
    std::string w;
    for (int n = len(rng); n > 0; --n) w.push_back(static_cast<char>('a' + letter(rng)));
    tokens.push_back(w + suffixes[suffix(rng)]);
  }
  const auto once = stem_custom(tokens, prot);
  CHECK(stem_custom(once, prot) == once);
}

TEST_CASE("default stop list matches the shipped data file") {
  const auto from_file = load_word_set(QAMINE_DATA_DIR "/stopwords_en.txt");
  CHECK(from_file == default_stoplist());
  CHECK(default_stoplist().contains("the"));
  CHECK(default_stoplist().contains("how"));
  CHECK_FALSE(default_stoplist().contains("xamarin"));
}

TEST_CASE("preprocessing pipeline") {
  const WordSet prot{"xamarin.forms"};
  CHECK(preprocess_title("How to style Buttons in Xamarin.Forms", default_stoplist(), prot) ==
        Tokens{"style", "button", "xamarin.forms"});
}

TEST_CASE("documents from the store: empty titles excluded, unknown ids reported") {
  CorpusStore store;
  std::vector<Record> records{testing::question("1", {"xamarin"}, "Binding errors in lists"),
                              testing::question("2", {"xamarin"}, "How to do this?"),
                              testing::question("3", {"xamarin"}, "Memory leaks")};
  store.put_records(std::move(records));
  const auto batch = build_documents({"1", "2", "9", "3"}, Source::StackExchangeDump, store, {}, default_stoplist());
  REQUIRE(batch.documents.size() == 2);
  CHECK(batch.documents[0] == Document{"1", {"binding", "error", "list"}});
  CHECK(batch.documents[1] == Document{"3", {"memory", "leak"}});
  CHECK(batch.excluded == Tokens{"2"});
  CHECK(batch.missing == Tokens{"9"});

  const auto back = documents_from_ndjson(documents_to_ndjson(batch.documents, {{"n", 2}}));
  CHECK(back == batch.documents);
}
