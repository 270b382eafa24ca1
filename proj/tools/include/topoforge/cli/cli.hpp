// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topoforge::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitBudget = 4;

// Parses `args` (without the program name) and runs one subcommand.
// Diagnostics go to `err`, progress to `out`. Never throws.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

std::string Version();

}  // namespace topoforge::cli
