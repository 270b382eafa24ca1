// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/community.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "topoforge/error.hpp"
#include "topoforge/metrics.hpp"
#include "topoforge/random.hpp"

namespace topoforge::community {

double Modularity(const Graph& g, const std::vector<std::uint32_t>& assignment) {
  if (assignment.size() != g.node_count()) {
    throw ValidationError("partition covers " +
                          std::to_string(assignment.size()) + " nodes, graph has " +
                          std::to_string(g.node_count()));
  }
  if (g.edge_count() == 0) return 0.0;
  const std::uint32_t k = assignment.empty()
                              ? 0
                              : *std::max_element(assignment.begin(), assignment.end()) + 1;
  std::vector<double> in(k, 0.0);
  std::vector<double> tot(k, 0.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    tot[assignment[u]] += static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) {
      if (assignment[u] == assignment[v]) in[assignment[u]] += 1.0;
    }
  }
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
  }
  return q;
}

CommunityPartition MakePartition(const Graph& g,
                                 const std::vector<std::uint32_t>& labels) {
  CommunityPartition p;
  p.assignment.resize(labels.size());
  std::vector<std::uint32_t> dense;
  std::vector<std::uint32_t> remap;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= remap.size()) remap.resize(labels[i] + 1, ~0u);
    if (remap[labels[i]] == ~0u) {
      remap[labels[i]] = static_cast<std::uint32_t>(p.community_count++);
    }
    p.assignment[i] = remap[labels[i]];
  }
  p.modularity = Modularity(g, p.assignment);
  return p;
}

namespace {

// Aggregated multigraph: integer weights held in doubles, self-loops
// separate. A self-loop of weight w adds 2w to its node's degree.
struct WeightedGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> loops;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }

  static WeightedGraph From(const Graph& g) {
    WeightedGraph w;
    w.adj.resize(g.node_count());
    w.loops.assign(g.node_count(), 0.0);
    w.degree.assign(g.node_count(), 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId v : g.neighbors(u)) w.adj[u].emplace_back(v, 1.0);
      w.degree[u] = static_cast<double>(g.degree(u));
      w.two_m += w.degree[u];
    }
    return w;
  }
};

constexpr double kGainEps = 1e-12;

// One level of local moves. Returns true if any node changed community.
bool LocalMoves(const WeightedGraph& w, std::vector<std::uint32_t>& comm,
                Rng& rng) {
  const std::size_t n = w.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += w.degree[i];

  std::vector<double> link_to(n, 0.0);
  std::vector<char> is_touched(n, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  bool moved_any = false;
  constexpr int kMaxPasses = 1000;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::shuffle(order.begin(), order.end(), rng);
    bool moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t own = comm[i];
      const double ki = w.degree[i];
      touched.clear();
      touched.push_back(own);
      is_touched[own] = 1;
      for (const auto& [j, wt] : w.adj[i]) {
        const std::uint32_t c = comm[j];
        if (!is_touched[c]) {
          is_touched[c] = 1;
          touched.push_back(c);
        }
        link_to[c] += wt;
      }
      tot[own] -= ki;
      // Gain of inserting i into c, up to the common factor 1/m.
      auto gain = [&](std::uint32_t c) {
        return link_to[c] - tot[c] * ki / w.two_m;
      };
      std::uint32_t best = own;
      double best_gain = gain(own);
      for (std::uint32_t c : touched) {
        if (c == own) continue;
        const double gc = gain(c);
        if (gc > best_gain + kGainEps ||
            (best != own && gc >= best_gain - kGainEps && c < best)) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += ki;
      for (std::uint32_t c : touched) {
        link_to[c] = 0.0;
        is_touched[c] = 0;
      }
      if (best != own) {
        comm[i] = best;
        moved = true;
        moved_any = true;
      }
    }
    if (!moved) break;
  }
  return moved_any;
}

// Renumbers communities densely in node order; returns the count.
std::uint32_t Compact(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> remap(comm.size(), ~0u);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (remap[c] == ~0u) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

WeightedGraph Aggregate(const WeightedGraph& w,
                        const std::vector<std::uint32_t>& comm,
                        std::uint32_t k) {
  WeightedGraph out;
  out.adj.resize(k);
  out.loops.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  out.two_m = w.two_m;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> raw(k);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::uint32_t ci = comm[i];
    out.loops[ci] += w.loops[i];
    out.degree[ci] += w.degree[i];
    for (const auto& [j, wt] : w.adj[i]) {
      const std::uint32_t cj = comm[j];
      if (ci == cj) {
        // Each internal edge is seen from both ends.
        out.loops[ci] += wt / 2.0;
      } else {
        raw[ci].emplace_back(cj, wt);
      }
    }
  }
  for (std::uint32_t c = 0; c < k; ++c) {
    auto& r = raw[c];
    std::sort(r.begin(), r.end());
    for (const auto& [d, wt] : r) {
      if (!out.adj[c].empty() && out.adj[c].back().first == d) {
        out.adj[c].back().second += wt;
      } else {
        out.adj[c].emplace_back(d, wt);
      }
    }
  }
  return out;
}

}  // namespace

MultilevelResult Louvain(const Graph& g, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  MultilevelResult result;
  std::vector<std::uint32_t> labels(n);
  std::iota(labels.begin(), labels.end(), 0u);
  result.modularity_per_round.push_back(Modularity(g, labels));
  if (g.edge_count() == 0) {
    result.partition = MakePartition(g, labels);
    return result;
  }

  Rng rng(seed);
  WeightedGraph level = WeightedGraph::From(g);
  while (true) {
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0u);
    if (!LocalMoves(level, comm, rng)) break;
    const std::uint32_t k = Compact(comm);
    for (auto& l : labels) l = comm[l];
    result.modularity_per_round.push_back(Modularity(g, labels));
    if (k == level.size()) break;
    level = Aggregate(level, comm, k);
  }
  result.partition = MakePartition(g, labels);
  return result;
}

std::vector<Component> Multilevel(const Graph& g, std::uint64_t seed) {
  const auto partition = Louvain(g, seed).partition;
  std::vector<std::vector<NodeId>> members(partition.community_count);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    members[partition.assignment[u]].push_back(u);
  }
  std::vector<Component> out;
  out.reserve(members.size());
  for (auto& m : members) {
    Component c;
    c.graph = InducedSubgraph(g, m);
    c.original = std::move(m);
    out.push_back(std::move(c));
  }
  return out;
}

bool IsSingleStar(const Graph& g) { return CountPositiveBetweenness(g) <= 1; }

namespace {

std::uint64_t PathSeed(std::uint64_t seed, const std::vector<std::uint32_t>& path) {
  std::uint64_t h = Mix64(seed);
  for (std::uint32_t step : path) h = Mix64(h ^ (step + 1));
  return h;
}

}  // namespace

FrmResult FrmExtract(const Graph& g, const FrmConfig& cfg) {
  if (cfg.n_min < 2 || cfg.n_min >= cfg.n_max) {
    throw ValidationError("FRM bounds need 2 <= n_min < n_max (got " +
                          std::to_string(cfg.n_min) + ", " +
                          std::to_string(cfg.n_max) + ")");
  }
  struct Entry {
    Graph graph;
    std::vector<NodeId> source;
    std::vector<std::uint32_t> path;
  };
  FrmResult result;
  std::vector<Entry> to_process;
  {
    Entry root{g, std::vector<NodeId>(g.node_count()), {}};
    std::iota(root.source.begin(), root.source.end(), NodeId{0});
    to_process.push_back(std::move(root));
  }
  while (!to_process.empty()) {
    Entry e = std::move(to_process.back());
    to_process.pop_back();
    result.stats.max_depth = std::max(result.stats.max_depth, e.path.size());
    const std::size_t n = e.graph.node_count();
    if (n > cfg.n_max) {
      ++result.stats.multilevel_calls;
      auto clusters = Multilevel(e.graph, PathSeed(cfg.rng_seed, e.path));
      if (clusters.size() <= 1) {
        ++result.stats.unsplittable;
        continue;
      }
      for (std::uint32_t i = 0; i < clusters.size(); ++i) {
        Entry child;
        child.graph = std::move(clusters[i].graph);
        child.source.reserve(clusters[i].original.size());
        for (NodeId local : clusters[i].original) child.source.push_back(e.source[local]);
        child.path = e.path;
        child.path.push_back(i);
        to_process.push_back(std::move(child));
      }
    } else if (n <= cfg.n_min) {
      ++result.stats.too_small;
    } else if (IsSingleStar(e.graph)) {
      ++result.stats.single_star;
    } else {
      result.graphs.push_back({std::move(e.graph), std::move(e.source), std::move(e.path)});
    }
  }
  std::sort(result.graphs.begin(), result.graphs.end(),
            [](const ExtractedGraph& a, const ExtractedGraph& b) {
              const auto na = a.graph.node_count();
              const auto nb = b.graph.node_count();
              if (na != nb) return na < nb;
              const auto ea = a.graph.edges();
              const auto eb = b.graph.edges();
              if (ea != eb) return ea < eb;
              return a.source_nodes < b.source_nodes;
            });
  return result;
}

}  // namespace topoforge::community
