// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "topoforge/graph.hpp"

namespace topoforge {

enum class NodeMetricKind { kDegree, kClustering, kBetweenness };
enum class ScalarMetricKind {
  kGlobalClustering,
  kAssortativity,
  kBetweennessRatio,
  kAverageDegree,
};

std::string_view ToString(NodeMetricKind kind);
std::string_view ToString(ScalarMetricKind kind);

// One value per node, aligned with node ids.
struct NodeMetricVector {
  NodeMetricKind kind;
  std::vector<double> values;
};

// A graph-level scalar. An empty `value` means the metric is undefined for
// the graph (for example assortativity of a regular graph); it is never
// encoded as 0 or NaN.
struct ScalarMetric {
  ScalarMetricKind kind;
  std::optional<double> value;

  bool defined() const noexcept { return value.has_value(); }
};

NodeMetricVector DegreeVector(const Graph& g);

// 2 l_i / (k_i (k_i - 1)) where l_i is the number of edges among the
// neighbors of i; 0 when k_i <= 1.
NodeMetricVector LocalClustering(const Graph& g);

// Transitivity: 3 * triangles / connected triples, where a connected triple
// is a length-2 path counted once per center node (so a triangle holds 3).
// Undefined when the graph has no connected triple.
ScalarMetric GlobalClustering(const Graph& g);

// Exact shortest-path betweenness, accumulated per source with Brandes'
// dependency recursion and normalized by (N-1)(N-2)/2 unordered pairs, so
// values lie in [0, 1]. All zeros when N < 3.
NodeMetricVector Betweenness(const Graph& g);

// max / mean of Betweenness(g); undefined when the mean is 0.
ScalarMetric BetweennessRatio(const Graph& g);

// Degree assortativity: Pearson correlation of the degrees at the two ends
// of every edge, each edge counted in both orientations. Undefined when
// there are no edges or the endpoint degrees have zero variance.
ScalarMetric Assortativity(const Graph& g);

// 2|E| / N; undefined for the empty graph.
ScalarMetric AverageDegree(const Graph& g);

// Number of nodes with strictly positive betweenness.
std::size_t CountPositiveBetweenness(const Graph& g);

}  // namespace topoforge
