// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <iosfwd>

#include "CLI11.hpp"

namespace topoforge::cli {

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

void AddIngest(CLI::App& app, Streams& io);
void AddExtract(CLI::App& app, Streams& io);
void AddTrain(CLI::App& app, Streams& io);
void AddGenerate(CLI::App& app, Streams& io);
void AddGenerateBaseline(CLI::App& app, Streams& io);
void AddEval(CLI::App& app, Streams& io);
void AddMetrics(CLI::App& app, Streams& io);

}  // namespace topoforge::cli
