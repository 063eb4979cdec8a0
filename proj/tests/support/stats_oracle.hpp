// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <random>
#include <vector>

#include "qamine/corpus_store.hpp"

namespace qamine::testing {

struct StoreFixture {
  std::vector<Record> records;
};

/// Random questions, answers (some dangling, some accepted), forums with a
/// random technological flag, and forum questions with and without forums.
StoreFixture random_store_fixture(std::mt19937_64& rng, std::size_t questions);

/// Recount straight from the raw records, without the store.
CorpusStats oracle_stats(const std::vector<Record>& records, Source source, bool technological_only);

}  // namespace qamine::testing
