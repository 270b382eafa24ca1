// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/synth.hpp"

#include <algorithm>
#include <string>

#include "topoforge/error.hpp"
#include "topoforge/parallel.hpp"

namespace topoforge {

std::string_view ToString(TauPolicy policy) {
  return policy == TauPolicy::kPerNode ? "per-node" : "per-graph";
}

TauPolicy ParseTauPolicy(std::string_view text) {
  if (text == "per-node" || text == "per_node") return TauPolicy::kPerNode;
  if (text == "per-graph" || text == "per_graph") return TauPolicy::kPerGraph;
  throw ValidationError("unknown tau policy '" + std::string(text) + "'");
}

void SynthConfig::Validate() const {
  if (count == 0) throw ValidationError("synthetic graph count must be >= 1");
  if (allowed_sizes) {
    if (allowed_sizes->empty()) throw ValidationError("size list is empty");
    if (*allowed_sizes->begin() == 0) {
      throw ValidationError("size list contains 0");
    }
  } else if (n_min == 0 || n_min > n_max) {
    throw ValidationError("need 1 <= n_min <= n_max");
  }
  if (max_attempts == 0) throw ValidationError("max_attempts must be >= 1");
  if (generation_length != 0 && generation_length < 2) {
    throw ValidationError("generation length must be >= 2");
  }
}

bool SynthConfig::Accepts(std::size_t nodes) const {
  if (allowed_sizes) return allowed_sizes->contains(nodes);
  return nodes >= n_min && nodes <= n_max;
}

std::size_t SynthConfig::RunLength() const {
  if (generation_length != 0) return generation_length;
  return allowed_sizes ? *allowed_sizes->rbegin() : n_max;
}

FreeRunResult FreeRun(const dggm::ModelParams& params, std::size_t n_max,
                      TauPolicy policy, Rng& rng, bool stop_at_eos) {
  const std::size_t m = params.dims().m_dim;
  FreeRunResult out;
  out.bits.m_dim = m;
  if (n_max == 0) return out;
  out.bits.n_nodes = 1;
  out.bits.rows.emplace_back(m, 0);
  out.probs.emplace_back();
  out.taus.push_back(0.0);

  dggm::Sampler sampler(params);
  std::vector<double> input(sampler.sos().begin(), sampler.sos().end());
  const double graph_tau =
      policy == TauPolicy::kPerGraph ? UniformOpen01(rng) : 0.0;

  for (std::size_t k = 1; k < n_max; ++k) {
    sampler.AdvanceGraph(input);
    const double tau =
        policy == TauPolicy::kPerNode ? UniformOpen01(rng) : graph_tau;
    const std::size_t w = std::min(k, m);
    std::vector<double> row_probs(w);
    std::vector<std::uint8_t> row(m, 0);
    double bit = dggm::kEdgeStartBit;
    for (std::size_t j = 0; j < w; ++j) {
      row_probs[j] = sampler.NextEdgeProbability(bit);
      row[j] = row_probs[j] >= tau ? 1 : 0;
      bit = row[j];
    }
    if (stop_at_eos && std::all_of(row.begin(), row.end(),
                                   [](std::uint8_t b) { return b == 0; })) {
      out.stopped_at_eos = true;
      break;
    }
    for (std::size_t j = 0; j < m; ++j) input[j] = row[j];
    out.probs.push_back(std::move(row_probs));
    out.taus.push_back(tau);
    out.bits.rows.push_back(std::move(row));
    ++out.bits.n_nodes;
  }
  return out;
}

Graph ThresholdDecode(const std::vector<std::vector<double>>& probs,
                      std::span<const double> taus) {
  if (taus.size() != probs.size()) {
    throw ValidationError("need one threshold per probability row");
  }
  Graph g(probs.size());
  for (std::size_t k = 1; k < probs.size(); ++k) {
    for (std::size_t j = 0; j < probs[k].size() && j < k; ++j) {
      if (probs[k][j] >= taus[k]) {
        g.AddEdge(static_cast<NodeId>(k), static_cast<NodeId>(k - 1 - j));
      }
    }
  }
  return g;
}

Graph ThresholdDecode(const std::vector<std::vector<double>>& probs,
                      TauPolicy policy, Rng& rng, std::vector<double>* taus_out) {
  std::vector<double> taus(probs.size(), 0.0);
  const double graph_tau =
      policy == TauPolicy::kPerGraph ? UniformOpen01(rng) : 0.0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    taus[k] = policy == TauPolicy::kPerNode ? UniformOpen01(rng) : graph_tau;
  }
  Graph g = ThresholdDecode(probs, taus);
  if (taus_out) *taus_out = std::move(taus);
  return g;
}

SynthResult Synthesize(const dggm::ModelParams& params, const SynthConfig& cfg) {
  cfg.Validate();
  const std::size_t length = cfg.RunLength();
  SynthResult result;
  double tau_sum = 0.0;

  struct Run {
    std::vector<Component> components;
    std::vector<double> taus;
    bool eos = false;
  };
  const std::size_t chunk = std::max<std::size_t>(1, WorkerCount());
  std::vector<Run> runs;
  std::size_t next_run = 0;

  while (result.graphs.size() < cfg.count) {
    if (next_run >= cfg.max_attempts) {
      throw BudgetExhausted(
          "accepted " + std::to_string(result.graphs.size()) + " of " +
          std::to_string(cfg.count) + " graphs after " +
          std::to_string(cfg.max_attempts) +
          " free runs; the size range may not match the model");
    }
    const std::size_t batch = std::min(chunk, cfg.max_attempts - next_run);
    runs.assign(batch, {});
    ParallelFor(batch, [&](std::size_t i) {
      Rng rng = MakeRng(cfg.rng_seed, next_run + i);
      FreeRunResult fr = FreeRun(params, length, cfg.tau_policy, rng,
                                 cfg.stop_at_eos);
      runs[i].components = ConnectedComponents(ThresholdDecode(fr.probs, fr.taus));
      runs[i].taus.assign(fr.taus.begin() + (fr.taus.empty() ? 0 : 1),
                          fr.taus.end());
      if (cfg.tau_policy == TauPolicy::kPerGraph && runs[i].taus.size() > 1) {
        runs[i].taus.resize(1);
      }
      runs[i].eos = fr.stopped_at_eos;
    });
    for (std::size_t i = 0; i < batch && result.graphs.size() < cfg.count; ++i) {
      SynthStats& s = result.stats;
      ++s.runs;
      if (runs[i].eos) ++s.eos_stops;
      for (double t : runs[i].taus) {
        s.tau_min = std::min(s.tau_min, t);
        s.tau_max = std::max(s.tau_max, t);
        tau_sum += t;
        ++s.tau_draws;
      }
      for (Component& c : runs[i].components) {
        if (result.graphs.size() >= cfg.count) break;
        ++s.components_examined;
        if (!cfg.Accepts(c.graph.node_count())) continue;
        ++s.accepted;
        result.graphs.push_back(std::move(c.graph));
        result.run_index.push_back(next_run + i);
      }
    }
    next_run += batch;
  }
  if (result.stats.tau_draws > 0) {
    result.stats.tau_mean = tau_sum / static_cast<double>(result.stats.tau_draws);
  }
  return result;
}

}  // namespace topoforge
