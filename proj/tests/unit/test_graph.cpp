// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <sstream>

#include "doctest.h"
#include "topoforge/checksum.hpp"
#include "topoforge/edge_list.hpp"
#include "topoforge/error.hpp"
#include "topoforge/graph.hpp"
#include "topoforge/parallel.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;

TEST_CASE("edges are normalized and deduplicated") {
  const std::vector<Edge> edges{{2, 0}, {0, 2}, {1, 2}};
  const Graph g = Graph::FromEdges(3, edges);
  CHECK(g.edge_count() == 2);
  CHECK(g.HasEdge(0, 2));
  CHECK(g.HasEdge(2, 0));
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(g.degree(2) == 2);
}

TEST_CASE("self-edges and bad endpoints are rejected") {
  Graph g(3);
  CHECK_THROWS_AS(g.AddEdge(1, 1), ValidationError);
  CHECK_THROWS_AS(g.AddEdge(0, 3), ValidationError);
  CHECK_FALSE(g.AddEdge(0, 1) == false);
  CHECK_FALSE(g.AddEdge(1, 0));
  CHECK(g.RemoveEdge(0, 1));
  CHECK_FALSE(g.RemoveEdge(0, 1));
  CHECK(g.edge_count() == 0);
}

TEST_CASE("adjacency stays sorted and symmetric") {
  Rng rng = MakeRng(3, 0);
  for (int t = 0; t < 20; ++t) {
    const Graph g = testing::RandomConnected(15, 0.2, rng);
    std::size_t degree_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      const auto nb = g.neighbors(u);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      for (NodeId v : nb) CHECK(g.HasEdge(v, u));
      degree_sum += nb.size();
    }
    CHECK(degree_sum == 2 * g.edge_count());
  }
}

TEST_CASE("connected components are ordered and relabelled") {
  Graph g(6);
  g.AddEdge(4, 5);
  g.AddEdge(0, 2);
  g.AddEdge(2, 3);
  const auto comps = ConnectedComponents(g);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].original == std::vector<NodeId>{0, 2, 3});
  CHECK(comps[0].graph.edge_count() == 2);
  CHECK(comps[1].original == std::vector<NodeId>{1});
  CHECK(comps[2].original == std::vector<NodeId>{4, 5});
  CHECK_FALSE(IsConnected(g));
  CHECK(IsConnected(comps[0].graph));
}

TEST_CASE("induced subgraph and relabel") {
  Graph g(4);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  g.AddEdge(2, 3);
  g.SetNodeAttribute(2, "lat", "1.5");
  const std::vector<NodeId> keep{2, 1};
  const Graph sub = InducedSubgraph(g, keep);
  CHECK(sub.node_count() == 2);
  CHECK(sub.HasEdge(0, 1));
  REQUIRE(sub.node_attributes(0) != nullptr);
  CHECK(sub.node_attributes(0)->at("lat") == "1.5");

  const std::vector<NodeId> perm{3, 2, 1, 0};
  const Graph r = Relabel(g, perm);
  CHECK(r.HasEdge(3, 2));
  CHECK(r.HasEdge(1, 0));
  CHECK(r.edge_count() == 3);
}

TEST_CASE("edge list round trip is canonical") {
  std::istringstream in(
      "# comment\n%nodes 5\n3 1\n0 1  # trailing comment\n\n1 3\n");
  const Graph g = ReadEdgeList(in);
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 2);
  std::ostringstream out;
  WriteEdgeList(out, g);
  CHECK(out.str() == "%nodes 5\n0 1\n1 3\n");
  std::istringstream again(out.str());
  CHECK(ReadEdgeList(again) == g);
}

TEST_CASE("edge list errors carry line numbers") {
  std::istringstream self("0 1\n2 2\n");
  try {
    ReadEdgeList(self);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream junk("0 x\n");
  CHECK_THROWS_AS(ReadEdgeList(junk), ParseError);
  std::istringstream extra("0 1 2\n");
  CHECK_THROWS_AS(ReadEdgeList(extra), ParseError);
  CHECK_THROWS_AS(ReadEdgeListFile("/nonexistent/file.edges"), InputError);
}

TEST_CASE("FNV-1a reference digests") {
  Fnv1a64 empty;
  CHECK(empty.digest() == 0xcbf29ce484222325ULL);
  Fnv1a64 a;
  a.Update(std::string_view("a"));
  CHECK(a.digest() == 0xaf63dc4c8601ec8cULL);
  CHECK(ToHex(0xabcULL) == "0000000000000abc");
}

TEST_CASE("ParallelFor visits every index and rethrows") {
  std::vector<int> hits(100, 0);
  ParallelFor(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 100);
  CHECK_THROWS_AS(ParallelFor(10,
                              [](std::size_t i) {
                                if (i == 7) throw InputError("boom");
                              }),
                  InputError);
}
