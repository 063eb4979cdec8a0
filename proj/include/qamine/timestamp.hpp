// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace qamine {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS" with optional fractional
/// seconds and an optional trailing 'Z'. Values are taken as UTC.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Always "YYYY-MM-DDTHH:MM:SS.mmmZ".
std::string format_timestamp(Timestamp ts);

}  // namespace qamine
