// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <filesystem>
#include <string>

namespace qamine {

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames into place so readers never
/// observe a half-written artifact.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qamine
