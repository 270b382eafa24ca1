// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topoforge/graph.hpp"
#include "topoforge/random.hpp"

namespace topoforge::dggm {

// Bandwidth-bounded adjacency encoding of an ordered graph. Row k (0-based
// position in the node order) has window_size(k) = min(k, M) meaningful
// slots; slot j holds the adjacency between node k and node k - 1 - j, so
// slot 0 is always the immediate predecessor. Row 0 is empty. Rows are
// stored with length M and zero padding past the meaningful slots.
struct EdgeSequence {
  std::size_t n_nodes = 0;
  std::size_t m_dim = 0;
  std::vector<std::vector<std::uint8_t>> rows;

  std::size_t window_size(std::size_t k) const { return k < m_dim ? k : m_dim; }
  // Total meaningful slots over all rows.
  std::size_t slot_count() const;
};

// BFS from `start`, visiting neighbors in ascending id order. Throws
// ValidationError if the graph is disconnected.
std::vector<NodeId> BfsOrderFrom(const Graph& g, NodeId start);

// BFS from a uniformly random start node.
std::vector<NodeId> BfsOrder(const Graph& g, Rng& rng);

// Max |pos(u) - pos(v)| over edges for the given order (0 for edgeless).
std::size_t Bandwidth(const Graph& g, std::span<const NodeId> order);

// order[k] is the graph node placed at position k. Edges spanning more than
// M positions are dropped. Throws ValidationError if m_dim == 0.
EdgeSequence ToSequence(const Graph& g, std::span<const NodeId> order,
                        std::size_t m_dim);

// Graph over sequence positions (node k is position k).
Graph FromSequence(const EdgeSequence& seq);

// Quantile of the BFS bandwidths seen over `trials_per_graph` random BFS
// orders of every graph (nearest-rank; quantile 1.0 is the maximum).
// Returns at least 1. Throws InputError for an empty corpus.
std::size_t EstimateTransientDim(std::span<const Graph> graphs, double quantile,
                                 Rng& rng, std::size_t trials_per_graph = 8);

}  // namespace topoforge::dggm
