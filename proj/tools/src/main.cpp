// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <iostream>
#include <string>
#include <vector>

#include "topoforge/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return topoforge::cli::Run(args, std::cout, std::cerr);
}
