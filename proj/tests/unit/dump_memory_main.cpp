// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

// Streams a generated million-row dump and checks peak RSS. Runs as its own
// process so the measurement is not polluted by other tests.

#include <sys/resource.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "qamine/se_dump.hpp"
#include "test_support.hpp"

int main() {
  constexpr long kRows = 1000000;
  constexpr long kLimitKb = 100 * 1024;
  qamine::testing::TempDir dir;
  const auto path = dir / "Posts.xml";
  {
    std::ofstream out(path);
    out << "<?xml version=\"1.0\" encoding=\"utf-8\"?>\n<posts>\n";
    for (long i = 1; i <= kRows; ++i) {
      if (i % 4 == 1) {
        out << "  <row Id=\"" << i << "\" PostTypeId=\"1\" AcceptedAnswerId=\"" << i + 1
            << "\" CreationDate=\"2016-01-01T00:00:00.000\" Score=\"2\" ViewCount=\"" << i % 9000
            << "\" Body=\"&lt;p&gt;How do I bind a list view to an observable collection in a shared project?&lt;/p&gt;\""
               " Title=\"Question number "
            << i << " about Xamarin.Forms bindings\" Tags=\"&lt;xamarin&gt;&lt;c#&gt;&lt;xamarin.forms&gt;\" />\n";
      } else {
        out << "  <row Id=\"" << i << "\" PostTypeId=\"2\" ParentId=\"" << i - (i - 1) % 4
            << "\" CreationDate=\"2016-01-01T00:00:00.000\" Score=\"0\""
               " Body=\"&lt;p&gt;Use an ObservableCollection and raise PropertyChanged.&lt;/p&gt;\" />\n";
      }
    }
    out << "</posts>\n";
  }

  std::size_t emitted = 0, accepted = 0;
  const auto report = qamine::dump::parse_posts(path, [&](qamine::PostRecord&& p) {
    ++emitted;
    accepted += p.accepted ? 1 : 0;
  });

  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  const long peak_kb = usage.ru_maxrss;
  const bool ok = emitted == kRows && report.rows == kRows && accepted == kRows / 4 && peak_kb < kLimitKb;
  std::printf("rows=%zu emitted=%zu accepted=%zu peak_rss_kb=%ld limit_kb=%ld\n", report.rows, emitted, accepted,
              peak_kb, kLimitKb);
  return ok ? 0 : 1;
}
