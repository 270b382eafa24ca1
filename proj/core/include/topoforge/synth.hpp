// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <vector>

#include "topoforge/dggm/model.hpp"
#include "topoforge/graph.hpp"
#include "topoforge/random.hpp"

namespace topoforge {

enum class TauPolicy { kPerNode, kPerGraph };

std::string_view ToString(TauPolicy policy);
// Accepts "per-node"/"per_node" and "per-graph"/"per_graph".
TauPolicy ParseTauPolicy(std::string_view text);

struct SynthConfig {
  std::size_t count = 1;
  // Accepted component sizes; {n_min..n_max} when absent.
  std::optional<std::set<std::size_t>> allowed_sizes;
  std::size_t n_min = 12;
  std::size_t n_max = 250;
  TauPolicy tau_policy = TauPolicy::kPerNode;
  std::size_t max_attempts = 10000;
  std::uint64_t rng_seed = 0;
  // Nodes per free run; 0 means the largest allowed size.
  std::size_t generation_length = 0;
  // End a run at the first all-zero row (models trained with an EOS row).
  bool stop_at_eos = false;

  void Validate() const;
  bool Accepts(std::size_t nodes) const;
  std::size_t RunLength() const;
};

struct FreeRunResult {
  // probs[k] holds the window_size(k) probabilities of row k.
  std::vector<std::vector<double>> probs;
  // One threshold per row k >= 1; taus[0] is unused and zero.
  std::vector<double> taus;
  dggm::EdgeSequence bits;
  bool stopped_at_eos = false;
};

// Autoregressive generation of up to n_max nodes. Each thresholded bit is
// fed to the next edge step and each thresholded row to the next node
// step, starting from SOS.
FreeRunResult FreeRun(const dggm::ModelParams& params, std::size_t n_max,
                      TauPolicy policy, Rng& rng, bool stop_at_eos = false);

// Edge (k, k-1-j) is present iff probs[k][j] >= taus[k].
Graph ThresholdDecode(const std::vector<std::vector<double>>& probs,
                      std::span<const double> taus);
// Draws the thresholds from U(0,1) per row or once, then decodes.
Graph ThresholdDecode(const std::vector<std::vector<double>>& probs,
                      TauPolicy policy, Rng& rng,
                      std::vector<double>* taus_out = nullptr);

struct SynthStats {
  std::size_t runs = 0;
  std::size_t components_examined = 0;
  std::size_t accepted = 0;
  std::size_t eos_stops = 0;
  double tau_min = 1.0;
  double tau_max = 0.0;
  double tau_mean = 0.0;
  std::size_t tau_draws = 0;

  double acceptance_rate() const {
    return components_examined == 0
               ? 0.0
               : static_cast<double>(accepted) /
                     static_cast<double>(components_examined);
  }
};

struct SynthResult {
  std::vector<Graph> graphs;
  std::vector<std::size_t> run_index;  // free run that produced graphs[i]
  SynthStats stats;
};

// Free run, decode, split into components and keep those with an allowed
// size until exactly cfg.count graphs exist. Throws BudgetExhausted after
// cfg.max_attempts runs.
SynthResult Synthesize(const dggm::ModelParams& params, const SynthConfig& cfg);

}  // namespace topoforge
