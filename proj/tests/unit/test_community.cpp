// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "doctest.h"
#include "oracles.hpp"
#include "topoforge/baselines.hpp"
#include "topoforge/community.hpp"
#include "topoforge/error.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;
using namespace topoforge::community;

namespace {

// Two triangles joined by one bridge.
Graph Barbell() {
  Graph g(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}}) {
    g.AddEdge(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return g;
}

}  // namespace

TEST_CASE("modularity matches the pairwise definition") {
  Rng rng = MakeRng(5, 0);
  for (int t = 0; t < 50; ++t) {
    const Graph g = testing::RandomGnp(9, 0.35, rng);
    std::vector<std::uint32_t> c(g.node_count());
    for (auto& x : c) x = static_cast<std::uint32_t>(UniformIndex(rng, 3));
    CHECK(Modularity(g, c) == doctest::Approx(testing::OracleModularity(g, c)).epsilon(1e-12));
  }
}

TEST_CASE("single community scores zero") {
  const Graph g = Barbell();
  CHECK(Modularity(g, std::vector<std::uint32_t>(6, 0)) == doctest::Approx(0.0));
}

TEST_CASE("barbell splits at the bridge") {
  const auto res = Louvain(Barbell(), 1);
  const auto& a = res.partition.assignment;
  CHECK(res.partition.community_count == 2);
  CHECK(a[0] == a[1]);
  CHECK(a[1] == a[2]);
  CHECK(a[3] == a[4]);
  CHECK(a[4] == a[5]);
  CHECK(a[0] != a[3]);
  CHECK(res.partition.modularity ==
        doctest::Approx(testing::OracleBestModularity(Barbell())).epsilon(1e-12));
}

TEST_CASE("Louvain never beats the exhaustive optimum and rounds are monotone") {
  Rng rng = MakeRng(9, 0);
  for (int t = 0; t < 40; ++t) {
    const Graph g = testing::RandomGnp(6, 0.5, rng);
    if (g.edge_count() == 0) continue;
    const auto res = Louvain(g, static_cast<std::uint64_t>(t));
    const double best = testing::OracleBestModularity(g);
    CHECK(res.partition.modularity <= best + 1e-12);
    CHECK(res.partition.modularity >= -1e-12);
    for (std::size_t r = 1; r < res.modularity_per_round.size(); ++r) {
      CHECK(res.modularity_per_round[r] >= res.modularity_per_round[r - 1] - 1e-12);
    }
    CHECK(res.partition.modularity ==
          doctest::Approx(testing::OracleModularity(g, res.partition.assignment)));
  }
}

TEST_CASE("Louvain is deterministic per seed") {
  Rng rng = MakeRng(1, 1);
  const Graph g = testing::RandomGnp(60, 0.08, rng);
  CHECK(Louvain(g, 3).partition.assignment == Louvain(g, 3).partition.assignment);
}

TEST_CASE("edgeless and complete graphs stay whole") {
  CHECK(Multilevel(Graph(5), 0).size() == 5);  // isolated nodes
  CHECK(Multilevel(testing::Complete(6), 0).size() == 1);
}

TEST_CASE("single-star filter") {
  CHECK(IsSingleStar(testing::Star(6)));
  CHECK(IsSingleStar(testing::Complete(5)));
  CHECK_FALSE(IsSingleStar(testing::Path(5)));
}

TEST_CASE("FRM postconditions on a preferential-attachment graph") {
  baselines::BaselineConfig cfg;
  cfg.rng_seed = 4;
  const Graph g = baselines::GenerateBA(1500, cfg);
  FrmConfig frm;
  frm.rng_seed = 8;
  const auto res = FrmExtract(g, frm);
  CHECK_FALSE(res.graphs.empty());
  std::vector<bool> used(g.node_count(), false);
  for (const auto& eg : res.graphs) {
    CHECK(eg.graph.node_count() > frm.n_min);
    CHECK(eg.graph.node_count() <= frm.n_max);
    CHECK_FALSE(IsSingleStar(eg.graph));
    CHECK(eg.source_nodes.size() == eg.graph.node_count());
    for (NodeId s : eg.source_nodes) {
      CHECK_FALSE(used[s]);  // extracted subgraphs are disjoint
      used[s] = true;
    }
    // Induced on the source nodes.
    for (const Edge& e : eg.graph.edges()) {
      CHECK(g.HasEdge(eg.source_nodes[e.u], eg.source_nodes[e.v]));
    }
  }
  CHECK(res.stats.multilevel_calls >= 1);
  const auto again = FrmExtract(g, frm);
  REQUIRE(again.graphs.size() == res.graphs.size());
  for (std::size_t i = 0; i < res.graphs.size(); ++i) {
    CHECK(again.graphs[i].graph == res.graphs[i].graph);
  }
}

TEST_CASE("FRM keeps an in-range graph as is and rejects bad bounds") {
  Rng rng = MakeRng(2, 2);
  const Graph g = testing::RandomConnected(40, 0.1, rng);
  const auto res = FrmExtract(g, FrmConfig{12, 250, 0});
  REQUIRE(res.graphs.size() == 1);
  CHECK(res.graphs[0].graph == g);
  CHECK(res.stats.multilevel_calls == 0);
  CHECK_THROWS_AS(FrmExtract(g, FrmConfig{20, 10, 0}), ValidationError);
}
