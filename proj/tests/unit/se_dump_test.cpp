// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <doctest.h>

#include <regex>

#include "qamine/io.hpp"
#include "qamine/se_dump.hpp"
#include "test_support.hpp"

using namespace qamine;
using namespace qamine::dump;

namespace {

const char* kPosts = R"(<?xml version="1.0" encoding="utf-8"?>
<posts>
  <row Id="5" PostTypeId="1" AcceptedAnswerId="7" CreationDate="2015-04-02T08:12:30.123" Score="3" ViewCount="120" Title="Xamarin &amp; &quot;Forms&quot;" Tags="&lt;xamarin&gt;&lt;C#&gt;" Body="&lt;p&gt;hi&lt;/p&gt;" OwnerUserId="9" />
  <row Id="6" PostTypeId="2" ParentId="5" Score="1" CreationDate="2015-04-02T09:00:00.000" />
  <row Id="7" PostTypeId="2" ParentId="5" Score="4" CreationDate="2015-04-02T10:00:00.000" />
  <row Id="8" PostTypeId="5" />
  <row Id="9" PostTypeId="1" Tags="|ios|xamarin.ios|" />
  <row PostTypeId="1" Title="no id" />
  <row Id="10" PostTypeId="2" />
  <row Id="11" PostTypeId="1" Title="Later" Tags="&lt;a&gt;" ViewCount="3" />
  <row Id="12" PostTypeId="2" ParentId="11" />
</posts>
)";

std::vector<PostRecord> parse_all(const std::filesystem::path& path, ParseReport* report = nullptr) {
  std::vector<PostRecord> out;
  auto r = parse_posts(path, [&out](PostRecord&& p) { out.push_back(std::move(p)); });
  if (report != nullptr) *report = r;
  return out;
}

}  // namespace

TEST_CASE("tag strings in both delimiter styles") {
  CHECK(parse_tag_string("<xamarin><c#>") == std::vector<std::string>{"xamarin", "c#"});
  CHECK(parse_tag_string("|ios|xamarin.ios|") == std::vector<std::string>{"ios", "xamarin.ios"});
  CHECK(parse_tag_string("<A><a>") == std::vector<std::string>{"a"});
  CHECK(parse_tag_string("").empty());
}

TEST_CASE("posts: questions, answers, accepted flag, skipped rows") {
  testing::TempDir dir;
  write_file_atomic(dir / "Posts.xml", kPosts);
  ParseReport report;
  const auto posts = parse_all(dir / "Posts.xml", &report);

  REQUIRE(posts.size() == 5);
  const auto& q = posts[0];
  CHECK(q.id == "5");
  CHECK(q.is_question());
  CHECK(q.title == "Xamarin & \"Forms\"");
  CHECK(q.tags == std::vector<std::string>{"xamarin", "c#"});
  CHECK(q.view_count == 120);
  CHECK(q.score == 3);
  CHECK(q.body == "<p>hi</p>");
  CHECK(format_timestamp(q.creation_date) == "2015-04-02T08:12:30.123Z");
  CHECK(q.author_id == "9");

  CHECK(posts[1].parent_id == "5");
  CHECK_FALSE(posts[1].accepted);
  CHECK(posts[2].accepted);
  CHECK(posts[3].id == "11");
  CHECK(posts[4].parent_id == "11");

  CHECK(report.rows == 9);
  CHECK(report.questions == 2);
  CHECK(report.answers == 3);
  CHECK(report.ignored == 1);
  CHECK(report.skipped == 3);  // untitled question, missing Id, answer without parent
}

TEST_CASE("question count equals an independent regex count") {
  testing::TempDir dir;
  std::string xml = "<posts>\n";
  for (int i = 1; i <= 300; ++i) {
    const int type = i % 3 == 0 ? 2 : 1;
    xml += "<row Id=\"" + std::to_string(i) + "\" PostTypeId=\"" + std::to_string(type) + "\"";
    xml += type == 1 ? " Title=\"t\" Tags=\"&lt;x&gt;\"" : " ParentId=\"1\"";
    xml += " />\n";
  }
  xml += "</posts>\n";
  write_file_atomic(dir / "p.xml", xml);
  const std::regex q(R"(PostTypeId="1")");
  const auto expected = std::distance(std::sregex_iterator(xml.begin(), xml.end(), q), std::sregex_iterator());
  ParseReport report;
  parse_all(dir / "p.xml", &report);
  CHECK(static_cast<long>(report.questions) == expected);
}

TEST_CASE("malformed XML reports a byte offset") {
  testing::TempDir dir;
  write_file_atomic(dir / "bad.xml", "<posts>\n<row Id=\"1\" PostTypeId=\"1\" Title=\"x\" \n</posts>");
  try {
    parse_all(dir / "bad.xml");
    FAIL("expected DumpError");
  } catch (const DumpError& e) {
    CHECK(e.offset() > 0);
    CHECK(e.offset() < 60);
  }
  CHECK_THROWS_AS(parse_all(dir / "absent.xml"), IoError);
}

TEST_CASE("tags file") {
  testing::TempDir dir;
  write_file_atomic(dir / "Tags.xml",
                    "<tags><row Id=\"1\" TagName=\"xamarin\" Count=\"25029\"/><row Id=\"2\" TagName=\"xamarin\" "
                    "Count=\"1\"/><row Id=\"3\" Count=\"4\"/></tags>");
  std::vector<std::pair<std::string, std::int64_t>> tags;
  const auto report = parse_tags(dir / "Tags.xml", [&](std::string&& n, std::int64_t c) { tags.emplace_back(n, c); });
  REQUIRE(tags.size() == 2);
  CHECK(tags[0] == std::pair<std::string, std::int64_t>{"xamarin", 25029});
  CHECK(tags[1].second == 1);
  CHECK(report.skipped == 1);

  write_file_atomic(dir / "Empty.xml", "<tags></tags>");
  CHECK(parse_tags(dir / "Empty.xml", [&](std::string&&, std::int64_t) { FAIL("no rows"); }).tags == 0);
}

TEST_CASE("serialized records survive a round trip through the dump format") {
  testing::TempDir dir;
  write_file_atomic(dir / "Posts.xml", kPosts);
  const auto first = parse_all(dir / "Posts.xml");
  for (const auto& p : first) {
    const auto back = record_from_json(to_json(Record{p}));
    CHECK(std::get<PostRecord>(back) == p);
  }
}
