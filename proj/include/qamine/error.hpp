// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#pragma once

#include <stdexcept>
#include <string>

namespace qamine {

/// Base exception for every failure surfaced by the toolkit. The code is a
/// short machine-readable category ("io", "parse", "invalid", "usage", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("io", message) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message) : Error("invalid", message) {}
};

}  // namespace qamine
