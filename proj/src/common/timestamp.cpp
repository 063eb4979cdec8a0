// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include "qamine/timestamp.hpp"

#include <fmt/format.h>

namespace qamine {

namespace {

bool take_digits(std::string_view& s, std::size_t n, int& out) {
  if (s.size() < n) return false;
  int v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  s.remove_prefix(n);
  return true;
}

bool take_char(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0, ms = 0;
  if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) ||
      !take_char(s, '-') || !take_digits(s, 2, d)) {
    return std::nullopt;
  }
  if (take_char(s, 'T') || take_char(s, ' ')) {
    if (!take_digits(s, 2, h) || !take_char(s, ':') || !take_digits(s, 2, mi) ||
        !take_char(s, ':') || !take_digits(s, 2, sec)) {
      return std::nullopt;
    }
    if (take_char(s, '.')) {
      int scale = 100;
      bool any = false;
      while (!s.empty() && s.front() >= '0' && s.front() <= '9') {
        ms += (s.front() - '0') * scale;
        scale /= 10;
        any = true;
        s.remove_prefix(1);
      }
      if (!any) return std::nullopt;
    }
  }
  take_char(s, 'Z');
  if (!s.empty()) return std::nullopt;
  year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  return time_point_cast<milliseconds>(sys_days{ymd}) + hours{h} + minutes{mi} + seconds{sec} +
         milliseconds{ms};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  auto day_point = floor<days>(ts);
  year_month_day ymd{day_point};
  hh_mm_ss<milliseconds> tod{ts - day_point};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", int(ymd.year()),
                     unsigned(ymd.month()), unsigned(ymd.day()), tod.hours().count(),
                     tod.minutes().count(), tod.seconds().count(), tod.subseconds().count());
}

}  // namespace qamine
