// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <vector>

#include "topoforge/graph.hpp"

namespace topoforge::community {

struct CommunityPartition {
  // Node -> community id; ids are dense and numbered by first appearance
  // in node order.
  std::vector<std::uint32_t> assignment;
  std::size_t community_count = 0;
  double modularity = 0.0;
};

// Q = sum_c [ in_c / 2|E| - (tot_c / 2|E|)^2 ] where in_c counts the
// adjacency entries inside community c (each internal edge twice) and tot_c
// is the degree sum of its nodes. Returns 0 for edgeless graphs. Throws
// ValidationError if the assignment does not cover the graph.
double Modularity(const Graph& g, const std::vector<std::uint32_t>& assignment);

// Packs an arbitrary labeling into a CommunityPartition (dense ids plus its
// modularity).
CommunityPartition MakePartition(const Graph& g,
                                 const std::vector<std::uint32_t>& labels);

struct MultilevelResult {
  CommunityPartition partition;
  // Modularity of the partition on the input graph after each aggregation
  // round; element 0 is the all-singletons partition.
  std::vector<double> modularity_per_round;
};

// Louvain multi-level optimization: local moves in a seeded random node
// order until no move improves Q, then aggregation of communities into
// weighted super-nodes, repeated while anything moves.
MultilevelResult Louvain(const Graph& g, std::uint64_t seed);

// Node-induced subgraphs of the Louvain communities, each paired with the
// input ids of its nodes (ascending). A single entry means no split.
std::vector<Component> Multilevel(const Graph& g, std::uint64_t seed);

// True iff at most one node has positive betweenness.
bool IsSingleStar(const Graph& g);

struct FrmConfig {
  std::size_t n_min = 12;
  std::size_t n_max = 250;
  std::uint64_t rng_seed = 0;
};

struct ExtractedGraph {
  Graph graph;
  // Node i of `graph` is source_nodes[i] of the FRM input.
  std::vector<NodeId> source_nodes;
  // Community index chosen at each split, root first. Its length is the
  // recursion depth at which the graph was accepted.
  std::vector<std::uint32_t> path;
};

struct FrmStats {
  std::size_t multilevel_calls = 0;
  std::size_t unsplittable = 0;   // > n_max but Louvain found one community
  std::size_t too_small = 0;      // <= n_min
  std::size_t single_star = 0;
  std::size_t max_depth = 0;      // deepest stack entry processed
};

struct FrmResult {
  std::vector<ExtractedGraph> graphs;
  FrmStats stats;
};

// Filtered recurrent multi-level extraction. Graphs with more than n_max
// nodes are split with Multilevel and re-queued (or dropped if unsplittable);
// graphs with n_min < N <= n_max that are not single stars are accepted.
// Output is sorted by node count, then edge list, then source nodes.
// Throws ValidationError unless 2 <= n_min < n_max.
FrmResult FrmExtract(const Graph& g, const FrmConfig& cfg);

}  // namespace topoforge::community
