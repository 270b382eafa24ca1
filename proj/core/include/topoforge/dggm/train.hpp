// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "topoforge/dggm/model.hpp"
#include "topoforge/dggm/optim.hpp"
#include "topoforge/graph.hpp"

namespace topoforge::dggm {

struct TrainConfig {
  std::size_t epochs = 500;
  std::size_t batch_size = 40;
  double lr = 0.003;
  double lr_decay = 0.3;
  std::vector<std::size_t> decay_epochs{300, 400};
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double grad_clip = 5.0;
  std::uint64_t rng_seed = 0;
  // Train an extra all-zero row per sequence as the stop target.
  bool append_eos = false;
  // Epochs between validation calls; 0 disables validation.
  std::size_t val_interval = 10;

  void Validate() const;
};

// Learning rate in force during `epoch` (1-based): the base rate times
// lr_decay for every listed decay epoch strictly before it.
double LearningRateAt(const TrainConfig& cfg, std::size_t epoch);

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double lr = 0.0;
  std::optional<double> val_mmd_degree;
};

// Returns a score for the current parameters; lower is better.
using ValidationFn = std::function<double(const ModelParams&)>;
using EpochFn = std::function<void(const EpochRecord&)>;

struct TrainResult {
  ModelParams params;                // after the last epoch
  std::optional<ModelParams> best;   // lowest validation score, if validated
  std::size_t best_epoch = 0;
  std::vector<EpochRecord> history;
  AdamState adam;
};

// Mini-batch BPTT training over bootstrap batches with a fresh random BFS
// order per visit. Throws ValidationError on an empty corpus, a
// disconnected graph or bad config, NumericalError on a non-finite loss.
TrainResult Train(std::span<const Graph> corpus, const TrainConfig& cfg,
                  const ModelDims& dims, const ValidationFn& validate = {},
                  const EpochFn& on_epoch = {});

// Continues from existing parameters and moments.
TrainResult Train(std::span<const Graph> corpus, const TrainConfig& cfg,
                  ModelParams start, AdamState adam,
                  const ValidationFn& validate = {},
                  const EpochFn& on_epoch = {});

// CSV with header epoch,mean_loss,lr,val_mmd_degree.
void WriteHistoryCsv(std::ostream& out, std::span<const EpochRecord> history);

}  // namespace topoforge::dggm
