// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/dggm/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "topoforge/error.hpp"

namespace topoforge::dggm {

std::size_t EdgeSequence::slot_count() const {
  std::size_t total = 0;
  for (std::size_t k = 1; k < n_nodes; ++k) total += window_size(k);
  return total;
}

std::vector<NodeId> BfsOrderFrom(const Graph& g, NodeId start) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> order;
  if (n == 0) return order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  order.push_back(start);
  seen[start] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (NodeId v : g.neighbors(order[head])) {
      if (!seen[v]) {
        seen[v] = 1;
        order.push_back(v);
      }
    }
  }
  if (order.size() != n) {
    throw ValidationError("BFS ordering needs a connected graph (reached " +
                          std::to_string(order.size()) + " of " +
                          std::to_string(n) + " nodes)");
  }
  return order;
}

std::vector<NodeId> BfsOrder(const Graph& g, Rng& rng) {
  if (g.node_count() == 0) return {};
  return BfsOrderFrom(g, static_cast<NodeId>(UniformIndex(rng, g.node_count())));
}

std::size_t Bandwidth(const Graph& g, std::span<const NodeId> order) {
  std::vector<std::size_t> pos(g.node_count());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  std::size_t width = 0;
  for (const Edge& e : g.edges()) {
    const auto a = pos[e.u];
    const auto b = pos[e.v];
    width = std::max(width, a > b ? a - b : b - a);
  }
  return width;
}

EdgeSequence ToSequence(const Graph& g, std::span<const NodeId> order,
                        std::size_t m_dim) {
  if (m_dim == 0) throw ValidationError("transient dimension must be positive");
  if (order.size() != g.node_count()) {
    throw ValidationError("node order does not cover the graph");
  }
  EdgeSequence seq;
  seq.n_nodes = order.size();
  seq.m_dim = m_dim;
  seq.rows.assign(seq.n_nodes, std::vector<std::uint8_t>(m_dim, 0));
  for (std::size_t k = 1; k < seq.n_nodes; ++k) {
    for (std::size_t j = 0; j < seq.window_size(k); ++j) {
      seq.rows[k][j] = g.HasEdge(order[k], order[k - 1 - j]) ? 1 : 0;
    }
  }
  return seq;
}

Graph FromSequence(const EdgeSequence& seq) {
  Graph g(seq.n_nodes);
  for (std::size_t k = 1; k < seq.n_nodes; ++k) {
    for (std::size_t j = 0; j < seq.window_size(k); ++j) {
      if (seq.rows[k][j]) {
        g.AddEdge(static_cast<NodeId>(k), static_cast<NodeId>(k - 1 - j));
      }
    }
  }
  return g;
}

std::size_t EstimateTransientDim(std::span<const Graph> graphs, double quantile,
                                 Rng& rng, std::size_t trials_per_graph) {
  if (graphs.empty()) throw InputError("cannot estimate M from an empty corpus");
  if (!(quantile > 0.0 && quantile <= 1.0)) {
    throw ValidationError("quantile must lie in (0, 1]");
  }
  trials_per_graph = std::max<std::size_t>(1, trials_per_graph);
  std::vector<std::size_t> widths;
  widths.reserve(graphs.size() * trials_per_graph);
  for (const Graph& g : graphs) {
    for (std::size_t t = 0; t < trials_per_graph; ++t) {
      widths.push_back(Bandwidth(g, BfsOrder(g, rng)));
    }
  }
  std::sort(widths.begin(), widths.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(widths.size())));
  const std::size_t idx = std::min(widths.size(), std::max<std::size_t>(1, rank)) - 1;
  return std::max<std::size_t>(1, widths[idx]);
}

}  // namespace topoforge::dggm
