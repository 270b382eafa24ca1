// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <vector>

#include "topoforge/graph.hpp"
#include "topoforge/random.hpp"

namespace topoforge::testing {

// Erdos-Renyi G(n, p); may be disconnected.
inline Graph RandomGnp(std::size_t n, double p, Rng& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) g.AddEdge(u, v);
    }
  }
  return g;
}

inline Graph Star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (NodeId v = 1; v <= leaves; ++v) g.AddEdge(0, v);
  return g;
}

inline Graph Path(std::size_t n) {
  Graph g(n);
  for (NodeId v = 1; v < n; ++v) g.AddEdge(v - 1, v);
  return g;
}

inline Graph Complete(std::size_t n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) g.AddEdge(u, v);
  }
  return g;
}

// Random recursive tree: node i attaches to a uniform earlier node.
inline Graph RandomTree(std::size_t n, Rng& rng) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) {
    g.AddEdge(static_cast<NodeId>(i), static_cast<NodeId>(UniformIndex(rng, i)));
  }
  return g;
}

// Random tree plus each remaining pair independently with probability p.
inline Graph RandomConnected(std::size_t n, double p, Rng& rng) {
  Graph g = RandomTree(n, rng);
  std::bernoulli_distribution extra(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!g.HasEdge(u, v) && extra(rng)) g.AddEdge(u, v);
    }
  }
  return g;
}

// `count` connected graphs with n uniform in [n_lo, n_hi].
inline std::vector<Graph> ToyCorpus(std::size_t count, std::size_t n_lo,
                                    std::size_t n_hi, double p,
                                    std::uint64_t seed) {
  Rng rng = MakeRng(seed, 0);
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = n_lo + UniformIndex(rng, n_hi - n_lo + 1);
    out.push_back(RandomConnected(n, p, rng));
  }
  return out;
}

}  // namespace topoforge::testing
