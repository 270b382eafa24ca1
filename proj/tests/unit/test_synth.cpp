// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <set>

#include "doctest.h"
#include "topoforge/error.hpp"
#include "topoforge/synth.hpp"

using namespace topoforge;
using namespace topoforge::dggm;

namespace {

ModelDims Dims(std::size_t m) {
  ModelDims d;
  d.m_dim = m;
  d.hidden = 6;
  d.edge_hidden = 4;
  return d;
}

// Parameters whose output logit is the constant b (all weights zero).
ModelParams ConstantModel(std::size_t m, double logit) {
  ModelParams p(Dims(m));
  p.values()[p.layout().out_b] = logit;
  return p;
}

std::vector<std::vector<double>> ConstantProbs(std::size_t n, std::size_t m, double p) {
  std::vector<std::vector<double>> probs(n);
  for (std::size_t k = 1; k < n; ++k) probs[k].assign(std::min(k, m), p);
  return probs;
}

}  // namespace

TEST_CASE("tau policy names") {
  CHECK(ParseTauPolicy("per-node") == TauPolicy::kPerNode);
  CHECK(ParseTauPolicy("per_graph") == TauPolicy::kPerGraph);
  CHECK_THROWS_AS(ParseTauPolicy("sometimes"), ValidationError);
}

TEST_CASE("free run shapes and zero model") {
  const ModelParams zero(Dims(3));
  Rng rng = MakeRng(1, 0);
  const auto fr = FreeRun(zero, 10, TauPolicy::kPerNode, rng);
  REQUIRE(fr.probs.size() == 10);
  CHECK(fr.taus.size() == 10);
  for (std::size_t k = 1; k < 10; ++k) {
    CHECK(fr.probs[k].size() == std::min<std::size_t>(k, 3));
    for (double p : fr.probs[k]) CHECK(p == 0.5);
    CHECK(fr.taus[k] > 0.0);
    CHECK(fr.taus[k] < 1.0);
  }
  Rng rng2 = MakeRng(1, 0);
  const auto again = FreeRun(zero, 10, TauPolicy::kPerNode, rng2);
  CHECK(again.taus == fr.taus);
  // The fed-back bits are the thresholded decisions.
  CHECK(FromSequence(fr.bits) == ThresholdDecode(fr.probs, fr.taus));
}

TEST_CASE("threshold decoding extremes") {
  Rng rng = MakeRng(2, 0);
  const Graph full = ThresholdDecode(ConstantProbs(8, 3, 1.0), TauPolicy::kPerNode, rng);
  // Banded graph: every pair within distance 3.
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId v = u + 1; v < 8; ++v) CHECK(full.HasEdge(u, v) == (v - u <= 3));
  }
  CHECK(ThresholdDecode(ConstantProbs(8, 3, 0.0), TauPolicy::kPerNode, rng).edge_count() == 0);
  const std::vector<double> taus(8, 0.4);
  CHECK(ThresholdDecode(ConstantProbs(8, 3, 0.5), taus) == full);
}

TEST_CASE("per-graph threshold gives a step function in tau") {
  std::set<std::size_t> outcomes;
  for (double tau = 0.01; tau < 1.0; tau += 0.01) {
    const std::vector<double> taus(12, tau);
    outcomes.insert(ThresholdDecode(ConstantProbs(12, 4, 0.37), taus).edge_count());
  }
  CHECK(outcomes.size() == 2);
  CHECK(outcomes.count(0) == 1);
}

TEST_CASE("per-graph free run uses one tau") {
  Rng rng = MakeRng(3, 0);
  const auto fr = FreeRun(ModelParams(Dims(2)), 6, TauPolicy::kPerGraph, rng);
  for (std::size_t k = 2; k < 6; ++k) CHECK(fr.taus[k] == fr.taus[1]);
}

TEST_CASE("synthesize returns exactly T connected in-range graphs") {
  const auto model = ConstantModel(3, 3.0);  // p ~ 0.95: mostly full bands
  SynthConfig cfg;
  cfg.count = 7;
  cfg.n_min = 5;
  cfg.n_max = 9;
  cfg.rng_seed = 4;
  const auto res = Synthesize(model, cfg);
  REQUIRE(res.graphs.size() == 7);
  for (const Graph& g : res.graphs) {
    CHECK(IsConnected(g));
    CHECK(g.node_count() >= 5);
    CHECK(g.node_count() <= 9);
  }
  CHECK(res.stats.accepted == 7);
  CHECK(res.stats.acceptance_rate() > 0.0);
  const auto again = Synthesize(model, cfg);
  for (std::size_t i = 0; i < 7; ++i) CHECK(again.graphs[i] == res.graphs[i]);
  CHECK(again.run_index == res.run_index);
}

TEST_CASE("explicit size list") {
  const auto model = ConstantModel(2, 4.0);
  SynthConfig cfg;
  cfg.count = 3;
  cfg.allowed_sizes = std::set<std::size_t>{6};
  const auto res = Synthesize(model, cfg);
  for (const Graph& g : res.graphs) CHECK(g.node_count() == 6);
}

TEST_CASE("impossible sizes exhaust the attempt budget") {
  const auto model = ConstantModel(2, -30.0);  // edgeless output
  SynthConfig cfg;
  cfg.count = 1;
  cfg.n_min = 4;
  cfg.n_max = 8;
  cfg.max_attempts = 25;
  CHECK_THROWS_AS(Synthesize(model, cfg), BudgetExhausted);
}

TEST_CASE("config validation") {
  SynthConfig cfg;
  cfg.count = 0;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.count = 1;
  cfg.allowed_sizes = std::set<std::size_t>{};
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
}

TEST_CASE("EOS stop ends a run at an all-zero row") {
  const auto model = ConstantModel(2, -30.0);
  Rng rng = MakeRng(5, 0);
  const auto fr = FreeRun(model, 20, TauPolicy::kPerNode, rng, true);
  CHECK(fr.stopped_at_eos);
  CHECK(fr.bits.n_nodes == 1);
}
