// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topoforge {

using NodeId = std::uint32_t;

// Undirected edge stored with first < second.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using Attributes = std::map<std::string, std::string>;

// Simple undirected graph over nodes [0, node_count). Adjacency lists are
// kept sorted by neighbor id. Self-edges and parallel edges are rejected.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t node_count);

  // Builds a graph from an edge list. Duplicate edges (in either
  // orientation) collapse; self-edges and out-of-range endpoints throw
  // ValidationError.
  static Graph FromEdges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool empty() const noexcept { return adjacency_.empty(); }

  // Appends an isolated node and returns its id.
  NodeId AddNode();

  // Inserts {u, v}. Returns false if the edge already exists. Throws
  // ValidationError for self-edges or invalid endpoints.
  bool AddEdge(NodeId u, NodeId v);
  bool RemoveEdge(NodeId u, NodeId v);
  bool HasEdge(NodeId u, NodeId v) const;

  std::span<const NodeId> neighbors(NodeId u) const { return adjacency_[u]; }
  std::size_t degree(NodeId u) const { return adjacency_[u].size(); }

  // All edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  // Opaque pass-through metadata. Node attributes are lazily sized.
  void SetNodeAttribute(NodeId u, const std::string& key, std::string value);
  const Attributes* node_attributes(NodeId u) const;
  void SetEdgeAttribute(NodeId u, NodeId v, const std::string& key,
                        std::string value);
  const Attributes* edge_attributes(NodeId u, NodeId v) const;

  // Structural equality (node count and edge set); attributes are ignored.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_ == b.adjacency_;
  }

 private:
  void CheckNode(NodeId u) const;

  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<Attributes> node_attrs_;
  std::map<Edge, Attributes> edge_attrs_;
};

// A connected component reindexed to contiguous ids. `original[i]` is the
// id node i had in the source graph.
struct Component {
  Graph graph;
  std::vector<NodeId> original;
};

// Node-induced subgraph over `nodes` (kept in the given order, so node i of
// the result is nodes[i]). Node attributes are carried over.
Graph InducedSubgraph(const Graph& g, std::span<const NodeId> nodes);

// Applies a permutation: node u of `g` becomes node perm[u].
Graph Relabel(const Graph& g, std::span<const NodeId> perm);

// Maximal connected subgraphs, ordered by their smallest original node id.
std::vector<Component> ConnectedComponents(const Graph& g);

bool IsConnected(const Graph& g);

}  // namespace topoforge
