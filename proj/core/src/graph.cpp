// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "topoforge/error.hpp"

namespace topoforge {

Graph::Graph(std::size_t node_count) : adjacency_(node_count) {}

Graph Graph::FromEdges(std::size_t node_count, std::span<const Edge> edges) {
  Graph g(node_count);
  for (const Edge& e : edges) g.AddEdge(e.u, e.v);
  return g;
}

NodeId Graph::AddNode() {
  adjacency_.emplace_back();
  return static_cast<NodeId>(adjacency_.size() - 1);
}

void Graph::CheckNode(NodeId u) const {
  if (u >= adjacency_.size()) {
    throw ValidationError("node " + std::to_string(u) +
                          " out of range for graph with " +
                          std::to_string(adjacency_.size()) + " nodes");
  }
}

bool Graph::AddEdge(NodeId u, NodeId v) {
  CheckNode(u);
  CheckNode(v);
  if (u == v) {
    throw ValidationError("self-edge on node " + std::to_string(u));
  }
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) return false;
  nu.insert(it, v);
  auto& nv = adjacency_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++edge_count_;
  return true;
}

bool Graph::RemoveEdge(NodeId u, NodeId v) {
  CheckNode(u);
  CheckNode(v);
  auto& nu = adjacency_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) return false;
  nu.erase(it);
  auto& nv = adjacency_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --edge_count_;
  edge_attrs_.erase(Edge(u, v));
  return true;
}

bool Graph::HasEdge(NodeId u, NodeId v) const {
  if (u >= adjacency_.size() || v >= adjacency_.size()) return false;
  const auto& nu = adjacency_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::SetNodeAttribute(NodeId u, const std::string& key,
                             std::string value) {
  CheckNode(u);
  if (node_attrs_.size() < adjacency_.size()) {
    node_attrs_.resize(adjacency_.size());
  }
  node_attrs_[u][key] = std::move(value);
}

const Attributes* Graph::node_attributes(NodeId u) const {
  if (u >= node_attrs_.size() || node_attrs_[u].empty()) return nullptr;
  return &node_attrs_[u];
}

void Graph::SetEdgeAttribute(NodeId u, NodeId v, const std::string& key,
                             std::string value) {
  if (!HasEdge(u, v)) {
    throw ValidationError("attribute on missing edge " + std::to_string(u) +
                          "-" + std::to_string(v));
  }
  edge_attrs_[Edge(u, v)][key] = std::move(value);
}

const Attributes* Graph::edge_attributes(NodeId u, NodeId v) const {
  auto it = edge_attrs_.find(Edge(u, v));
  return it == edge_attrs_.end() ? nullptr : &it->second;
}

Graph InducedSubgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = ~NodeId{0};
  std::vector<NodeId> local(g.node_count(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  Graph sub(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId u = nodes[i];
    for (NodeId v : g.neighbors(u)) {
      const NodeId j = local[v];
      if (j != kAbsent && i < j) {
        sub.AddEdge(static_cast<NodeId>(i), j);
        if (const Attributes* attrs = g.edge_attributes(u, v)) {
          for (const auto& [k, val] : *attrs) {
            sub.SetEdgeAttribute(static_cast<NodeId>(i), j, k, val);
          }
        }
      }
    }
    if (const Attributes* attrs = g.node_attributes(u)) {
      for (const auto& [k, val] : *attrs) {
        sub.SetNodeAttribute(static_cast<NodeId>(i), k, val);
      }
    }
  }
  return sub;
}

Graph Relabel(const Graph& g, std::span<const NodeId> perm) {
  Graph out(g.node_count());
  for (const Edge& e : g.edges()) out.AddEdge(perm[e.u], perm[e.v]);
  return out;
}

std::vector<Component> ConnectedComponents(const Graph& g) {
  constexpr NodeId kUnseen = ~NodeId{0};
  std::vector<NodeId> label(g.node_count(), kUnseen);
  std::vector<Component> out;
  std::vector<NodeId> members;
  for (NodeId root = 0; root < g.node_count(); ++root) {
    if (label[root] != kUnseen) continue;
    const auto id = static_cast<NodeId>(out.size());
    members.clear();
    std::queue<NodeId> frontier;
    frontier.push(root);
    label[root] = id;
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      members.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (label[v] == kUnseen) {
          label[v] = id;
          frontier.push(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    Component c;
    c.graph = InducedSubgraph(g, members);
    c.original = members;
    out.push_back(std::move(c));
  }
  return out;
}

bool IsConnected(const Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == g.node_count();
}

}  // namespace topoforge
