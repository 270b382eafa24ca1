// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "doctest.h"
#include "topoforge/dggm/sequence.hpp"
#include "topoforge/error.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;
using namespace topoforge::dggm;

TEST_CASE("BFS orders") {
  CHECK(BfsOrderFrom(testing::Path(3), 0) == std::vector<NodeId>{0, 1, 2});
  CHECK(BfsOrderFrom(testing::Star(4), 0) == std::vector<NodeId>{0, 1, 2, 3, 4});
  CHECK(BfsOrderFrom(testing::Star(4), 3) == std::vector<NodeId>{3, 0, 1, 2, 4});
  Graph split(4);
  split.AddEdge(0, 1);
  Rng rng = MakeRng(0, 0);
  CHECK_THROWS_AS(BfsOrder(split, rng), ValidationError);
}

TEST_CASE("every BFS order has each node's parent before it") {
  Rng rng = MakeRng(1, 0);
  for (int t = 0; t < 30; ++t) {
    const Graph g = testing::RandomConnected(14, 0.15, rng);
    const auto order = BfsOrder(g, rng);
    std::vector<std::size_t> pos(g.node_count());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    for (std::size_t k = 1; k < order.size(); ++k) {
      bool has_earlier = false;
      for (NodeId v : g.neighbors(order[k])) has_earlier |= pos[v] < k;
      CHECK(has_earlier);
    }
  }
}

TEST_CASE("triangle and path windows") {
  const auto tri = ToSequence(testing::Complete(3), std::vector<NodeId>{0, 1, 2}, 2);
  CHECK(tri.rows[1][0] == 1);
  CHECK(tri.rows[2] == std::vector<std::uint8_t>{1, 1});
  CHECK(tri.slot_count() == 3);

  const auto path = ToSequence(testing::Path(4), std::vector<NodeId>{0, 1, 2, 3}, 2);
  for (std::size_t k = 1; k < 4; ++k) {
    CHECK(path.rows[k][0] == 1);
    if (path.window_size(k) > 1) CHECK(path.rows[k][1] == 0);
  }
}

TEST_CASE("bandwidth 3 encoded at width 2 loses exactly the far edges") {
  Graph g(5);
  g.AddEdge(0, 1);
  g.AddEdge(0, 2);
  g.AddEdge(0, 3);
  g.AddEdge(1, 4);
  const auto order = BfsOrderFrom(g, 0);
  REQUIRE(order == std::vector<NodeId>{0, 1, 2, 3, 4});
  CHECK(Bandwidth(g, order) == 3);
  const auto seq = ToSequence(g, order, 2);
  CHECK(seq.rows[1] == std::vector<std::uint8_t>{1, 0});
  CHECK(seq.rows[2] == std::vector<std::uint8_t>{0, 1});
  CHECK(seq.rows[3] == std::vector<std::uint8_t>{0, 0});
  CHECK(seq.rows[4] == std::vector<std::uint8_t>{0, 0});
  const Graph back = FromSequence(seq);
  CHECK(back.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
}

TEST_CASE("round trip is exact within the bandwidth") {
  Rng rng = MakeRng(2, 0);
  for (int t = 0; t < 40; ++t) {
    const Graph g = testing::RandomConnected(12, 0.2, rng);
    const auto order = BfsOrder(g, rng);
    const std::size_t m = Bandwidth(g, order);
    std::vector<NodeId> pos(g.node_count());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<NodeId>(k);
    CHECK(FromSequence(ToSequence(g, order, m)) == Relabel(g, pos));
    CHECK(FromSequence(ToSequence(g, order, m + 3)) == Relabel(g, pos));
    if (m > 1) {
      CHECK(FromSequence(ToSequence(g, order, m - 1)).edge_count() < g.edge_count());
    }
  }
}

TEST_CASE("transient dimension estimate") {
  Rng rng = MakeRng(3, 0);
  const std::vector<Graph> edges(4, testing::Path(2));
  CHECK(EstimateTransientDim(edges, 1.0, rng) == 1);
  // A BFS from an interior path node reaches back two positions.
  const std::vector<Graph> paths{testing::Path(5), testing::Path(9)};
  CHECK(EstimateTransientDim(paths, 1.0, rng) == 2);
  const std::vector<Graph> triangles(3, testing::Complete(3));
  CHECK(EstimateTransientDim(triangles, 1.0, rng) == 2);
  std::vector<Graph> mixed;
  for (int i = 0; i < 30; ++i) mixed.push_back(testing::RandomConnected(15, 0.1, rng));
  mixed.push_back(testing::Path(4));
  const auto hi = EstimateTransientDim(mixed, 1.0, rng);
  const auto q = EstimateTransientDim(mixed, 0.5, rng);
  CHECK(q >= 1);
  CHECK(q <= hi);
  CHECK_THROWS_AS(EstimateTransientDim(std::vector<Graph>{}, 1.0, rng), InputError);
}
