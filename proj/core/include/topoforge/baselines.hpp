// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "topoforge/graph.hpp"
#include "topoforge/random.hpp"

namespace topoforge::baselines {

enum class BaselineKind { kBA, kEBA, kDBA, kBB };

BaselineKind ParseBaselineKind(std::string_view name);  // "ba", "eba", ...
std::string_view ToString(BaselineKind kind);

// Node fitness for the Bianconi-Barabasi model.
struct FitnessSpec {
  enum class Kind { kUniform, kConstant } kind = Kind::kUniform;
  double value = 1.0;  // used by kConstant
};

struct BaselineConfig {
  BaselineKind kind = BaselineKind::kBA;
  std::size_t m_links = 2;
  double eba_p_ba = 0.5;
  double eba_p_add = 0.25;
  double eba_p_rewire = 0.25;
  double dba_p_single = 0.35;
  FitnessSpec bb_fitness;
  // Per-node fitness override for BB; when non-empty it must hold at least
  // n entries and takes precedence over bb_fitness.
  std::vector<double> bb_fitness_values;
  std::uint64_t rng_seed = 0;

  void Validate() const;  // throws ValidationError
};

// Preferential-attachment growth state shared by all generators. Targets
// are drawn with probability proportional to fitness * degree using a
// Fenwick tree; a newcomer never receives two links to the same node.
class PreferentialGrowth {
 public:
  // Starts from a clique on `seed_nodes` nodes. `capacity` bounds the final
  // node count; `fitness` holds one positive value per node up to capacity
  // (empty means all ones).
  PreferentialGrowth(std::size_t seed_nodes, std::size_t capacity,
                     std::vector<double> fitness, Rng& rng);

  const Graph& graph() const { return graph_; }
  Graph Release() { return std::move(graph_); }

  // Adds a node linked to `links` distinct existing nodes (capped at the
  // current node count).
  void AddNode(std::size_t links);

  // Adds up to `links` edges between existing nodes: one end uniform, the
  // other preferential. Each attempt gives up after 32 tries.
  void AddLinks(std::size_t links);

  // Rewires up to `links` edges: a uniform edge (u, v) loses its v end,
  // which is reattached preferentially to some w != u with (u, w) absent.
  // v keeps at least one link. Each attempt gives up after 32 tries.
  // Returns the number of successful rewires.
  std::size_t RewireLinks(std::size_t links);

 private:
  double Weight(NodeId u) const;
  void SetWeight(NodeId u, double w);
  NodeId Sample();
  void Connect(NodeId u, NodeId v);

  Graph graph_;
  std::vector<double> fitness_;
  std::vector<double> tree_;     // Fenwick tree over node weights
  std::vector<double> weight_;
  double total_ = 0.0;
  std::vector<Edge> edge_list_;  // for uniform edge picks
  Rng& rng_;
};

// BA: clique seed of m+1 nodes, then m preferential links per newcomer.
Graph GenerateBA(std::size_t n, const BaselineConfig& cfg);
// Extended BA: per event, grow (p_ba), add m links (p_add) or rewire m
// links (p_rewire) until n nodes exist.
Graph GenerateEBA(std::size_t n, const BaselineConfig& cfg);
// Dual BA: each newcomer brings 1 link with probability p_single, else m.
Graph GenerateDBA(std::size_t n, const BaselineConfig& cfg);
// Bianconi-Barabasi: attachment proportional to fitness * degree.
Graph GenerateBB(std::size_t n, const BaselineConfig& cfg);

Graph Generate(std::size_t n, const BaselineConfig& cfg);

// Shifted gamma with density y^(a-1) exp(-y) / (s Gamma(a)), y = (x-m)/s.
struct GammaParams {
  double shape = 1.0;     // a
  double scale = 1.0;     // s
  double location = 0.0;  // m
};

double GammaLogLikelihood(const GammaParams& p, std::span<const double> samples);

struct GammaFitOptions {
  // Location is fixed at min(samples) - location_epsilon unless
  // free_location is set, in which case it is profiled out as well.
  double location_epsilon = 0.01;
  bool free_location = false;
};

// Maximum likelihood fit. For a fixed location the scale has the closed
// form mean(x - m) / a, so the search is a golden-section over log(a) on
// the profile likelihood. Throws ValidationError for fewer than 10 samples
// or constant samples.
GammaParams FitGammaMle(std::span<const double> samples,
                        const GammaFitOptions& options = {});

// Draws from the shifted gamma, rounds to the nearest integer and rejects
// values outside [n_min, n_max]. Throws BudgetExhausted after 10^6
// consecutive rejections.
std::size_t SampleNodeCount(const GammaParams& p, std::size_t n_min,
                            std::size_t n_max, Rng& rng);

}  // namespace topoforge::baselines
