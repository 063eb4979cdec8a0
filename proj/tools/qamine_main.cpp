// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The qamine Authors

#include <iostream>
#include <string>
#include <vector>

#include "qamine/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qamine::cli::run(args, std::cout, std::cerr);
}
