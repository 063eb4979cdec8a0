// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <doctest.h>

#include <sstream>

#include "qamine/csv.hpp"
#include "qamine/error.hpp"
#include "qamine/io.hpp"
#include "qamine/strings.hpp"
#include "qamine/timestamp.hpp"
#include "test_support.hpp"

using namespace qamine;

TEST_CASE("strings") {
  CHECK(to_lower("Xamarin.iOS") == "xamarin.ios");
  CHECK(trim("  a b \n") == "a b");
  CHECK(normalize_label("  Data   Binding ") == "data binding");
  CHECK(split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(starts_with_icase("XAMARIN.forms", "xamarin"));
  long long v = 0;
  CHECK(parse_int("-42", v));
  CHECK(v == -42);
  CHECK_FALSE(parse_int("4x", v));
  CHECK_FALSE(parse_int("", v));
}

TEST_CASE("id ordering") {
  IdLess less;
  CHECK(less("9", "10"));
  CHECK_FALSE(less("10", "9"));
  CHECK(less("999", "a"));
  CHECK(less("a", "b"));
  CHECK_FALSE(less("7", "7"));
}

TEST_CASE("csv round trip") {
  const csv::Row row{"plain", "with,comma", "with \"quote\"", "#hash", "two\nlines", ""};
  std::ostringstream out;
  out << "# comment line\n";
  csv::write_row(out, {"a", "b", "c", "d", "e", "f"});
  csv::write_row(out, row);
  const auto rows = csv::parse(out.str());
  REQUIRE(rows.size() == 2);
  CHECK(rows[1] == row);
  CHECK(csv::column(rows[0], "c") == 2);
  CHECK(csv::column(rows[0], "z") == -1);
}

TEST_CASE("timestamps") {
  const auto ts = parse_timestamp("2015-04-02T08:12:30.5");
  REQUIRE(ts);
  CHECK(format_timestamp(*ts) == "2015-04-02T08:12:30.500Z");
  CHECK(format_timestamp(*parse_timestamp("2015-04-02")) == "2015-04-02T00:00:00.000Z");
  CHECK(parse_timestamp("2015-04-02T08:12:30Z") == parse_timestamp("2015-04-02T08:12:30.000"));
  CHECK_FALSE(parse_timestamp("yesterday"));
  CHECK_FALSE(parse_timestamp("2015-13-02"));
}

TEST_CASE("files") {
  testing::TempDir dir;
  write_file_atomic(dir / "sub" / "f.txt", "hello");
  CHECK(read_file(dir / "sub" / "f.txt") == "hello");
  write_file_atomic(dir / "words.txt", "# header\nAlpha\n\n beta \n");
  CHECK(read_word_list((dir / "words.txt").string()) == std::vector<std::string>{"alpha", "beta"});
  CHECK_THROWS_AS(read_file(dir / "missing"), IoError);
}
