// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace topoforge {

std::string_view ToString(NodeMetricKind kind) {
  switch (kind) {
    case NodeMetricKind::kDegree: return "degree";
    case NodeMetricKind::kClustering: return "clustering";
    case NodeMetricKind::kBetweenness: return "betweenness";
  }
  return "unknown";
}

std::string_view ToString(ScalarMetricKind kind) {
  switch (kind) {
    case ScalarMetricKind::kGlobalClustering: return "global_clustering";
    case ScalarMetricKind::kAssortativity: return "assortativity";
    case ScalarMetricKind::kBetweennessRatio: return "betweenness_ratio";
    case ScalarMetricKind::kAverageDegree: return "average_degree";
  }
  return "unknown";
}

NodeMetricVector DegreeVector(const Graph& g) {
  NodeMetricVector out{NodeMetricKind::kDegree,
                       std::vector<double>(g.node_count())};
  for (NodeId u = 0; u < g.node_count(); ++u) {
    out.values[u] = static_cast<double>(g.degree(u));
  }
  return out;
}

namespace {

// Edges among the neighbors of u. Sorted adjacency lets us intersect.
std::size_t LinksAmongNeighbors(const Graph& g, NodeId u) {
  std::size_t links = 0;
  const auto nu = g.neighbors(u);
  for (NodeId v : nu) {
    const auto nv = g.neighbors(v);
    // Count w in N(u) ∩ N(v) with w > v so each link is seen once.
    auto a = std::upper_bound(nu.begin(), nu.end(), v);
    auto b = std::upper_bound(nv.begin(), nv.end(), v);
    while (a != nu.end() && b != nv.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++links;
        ++a;
        ++b;
      }
    }
  }
  return links;
}

}  // namespace

NodeMetricVector LocalClustering(const Graph& g) {
  NodeMetricVector out{NodeMetricKind::kClustering,
                       std::vector<double>(g.node_count(), 0.0)};
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const double k = static_cast<double>(g.degree(u));
    if (k <= 1) continue;
    out.values[u] =
        2.0 * static_cast<double>(LinksAmongNeighbors(g, u)) / (k * (k - 1));
  }
  return out;
}

ScalarMetric GlobalClustering(const Graph& g) {
  // Summing links-among-neighbors over all nodes counts each triangle three
  // times, which is exactly the numerator 3 * N_triangles.
  std::uint64_t closed = 0;
  std::uint64_t triples = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::uint64_t k = g.degree(u);
    triples += k * (k - (k > 0 ? 1 : 0)) / 2;
    closed += LinksAmongNeighbors(g, u);
  }
  ScalarMetric out{ScalarMetricKind::kGlobalClustering, std::nullopt};
  if (triples > 0) {
    out.value = static_cast<double>(closed) / static_cast<double>(triples);
  }
  return out;
}

NodeMetricVector Betweenness(const Graph& g) {
  const std::size_t n = g.node_count();
  NodeMetricVector out{NodeMetricKind::kBetweenness,
                       std::vector<double>(n, 0.0)};
  if (n < 3) return out;

  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::int64_t> dist(n);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<NodeId> queue(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::size_t head = 0;
    std::size_t tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const NodeId v = queue[head++];
      order.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // Predecessors are recovered from distances instead of being stored.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId v : g.neighbors(w)) {
        if (dist[v] == dist[w] - 1) {
          delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
      }
      if (w != s) out.values[w] += delta[w];
    }
  }
  // Every unordered pair was visited from both ends.
  const double pairs = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  for (double& b : out.values) b /= pairs;
  return out;
}

ScalarMetric BetweennessRatio(const Graph& g) {
  ScalarMetric out{ScalarMetricKind::kBetweennessRatio, std::nullopt};
  const auto b = Betweenness(g).values;
  if (b.empty()) return out;
  const double sum = std::accumulate(b.begin(), b.end(), 0.0);
  if (sum <= 0.0) return out;
  const double mean = sum / static_cast<double>(b.size());
  out.value = *std::max_element(b.begin(), b.end()) / mean;
  return out;
}

ScalarMetric Assortativity(const Graph& g) {
  ScalarMetric out{ScalarMetricKind::kAssortativity, std::nullopt};
  if (g.edge_count() == 0) return out;
  // Degrees are integers, so every moment below is exact in 128-bit
  // arithmetic (both orientations make the x and y marginals identical).
  __extension__ typedef __int128 Wide;
  Wide count = 0;
  Wide sum = 0;
  Wide sum_sq = 0;
  Wide sum_xy = 0;
  for (const Edge& e : g.edges()) {
    const auto a = static_cast<Wide>(g.degree(e.u));
    const auto b = static_cast<Wide>(g.degree(e.v));
    count += 2;
    sum += a + b;
    sum_sq += a * a + b * b;
    sum_xy += 2 * a * b;
  }
  const Wide var = count * sum_sq - sum * sum;
  if (var == 0) return out;
  const Wide cov = count * sum_xy - sum * sum;
  out.value = static_cast<double>(cov) / static_cast<double>(var);
  return out;
}

ScalarMetric AverageDegree(const Graph& g) {
  ScalarMetric out{ScalarMetricKind::kAverageDegree, std::nullopt};
  if (g.node_count() == 0) return out;
  out.value = 2.0 * static_cast<double>(g.edge_count()) /
              static_cast<double>(g.node_count());
  return out;
}

std::size_t CountPositiveBetweenness(const Graph& g) {
  const auto b = Betweenness(g).values;
  return static_cast<std::size_t>(
      std::count_if(b.begin(), b.end(), [](double x) { return x > 1e-12; }));
}

}  // namespace topoforge
