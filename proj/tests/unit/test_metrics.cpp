// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "topoforge/metrics.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;
using topoforge::testing::Complete;
using topoforge::testing::Path;
using topoforge::testing::Star;

TEST_CASE("triangle") {
  const Graph g = Complete(3);
  CHECK(DegreeVector(g).values == std::vector<double>{2, 2, 2});
  CHECK(LocalClustering(g).values == std::vector<double>{1, 1, 1});
  CHECK(*GlobalClustering(g).value == doctest::Approx(1.0));
  CHECK(Betweenness(g).values == std::vector<double>{0, 0, 0});
  CHECK_FALSE(Assortativity(g).defined());
  CHECK(*AverageDegree(g).value == 2.0);
}

TEST_CASE("star with four leaves") {
  const Graph g = Star(4);
  const auto bc = Betweenness(g).values;
  CHECK(bc[0] == doctest::Approx(1.0));
  for (int i = 1; i <= 4; ++i) CHECK(bc[i] == 0.0);
  CHECK(*Assortativity(g).value == doctest::Approx(-1.0));
  CHECK(*GlobalClustering(g).value == 0.0);
  CHECK(*BetweennessRatio(g).value == doctest::Approx(5.0));
  CHECK(CountPositiveBetweenness(g) == 1);
}

TEST_CASE("path of five") {
  const Graph g = Path(5);
  const auto bc = Betweenness(g).values;
  // Middle node lies on 4 of the 6 pairs among the other nodes.
  CHECK(bc[2] == doctest::Approx(4.0 / 6.0));
  CHECK(bc[1] == doctest::Approx(3.0 / 6.0));
  CHECK(bc[0] == 0.0);
  CHECK(*GlobalClustering(g).value == 0.0);
}

TEST_CASE("undefined scalars") {
  CHECK_FALSE(GlobalClustering(Graph(4)).defined());
  CHECK_FALSE(Assortativity(Graph(4)).defined());
  CHECK_FALSE(BetweennessRatio(Complete(4)).defined());
  CHECK_FALSE(AverageDegree(Graph()).defined());
  // Cycles are regular: zero degree variance.
  Graph cycle = Path(6);
  cycle.AddEdge(5, 0);
  CHECK_FALSE(Assortativity(cycle).defined());
}

TEST_CASE("metrics agree with brute-force oracles on random small graphs") {
  Rng rng = MakeRng(2024, 0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + UniformIndex(rng, 12);
    const double p = 0.1 + 0.8 * UniformOpen01(rng);
    const Graph g = testing::RandomGnp(n, p, rng);

    const auto bc = Betweenness(g).values;
    const auto bc_ref = testing::OracleBetweenness(g);
    const auto cc = LocalClustering(g).values;
    const auto cc_ref = testing::OracleLocalClustering(g);
    for (std::size_t u = 0; u < n; ++u) {
      CHECK(bc[u] == doctest::Approx(bc_ref[u]).epsilon(1e-9));
      CHECK(cc[u] == doctest::Approx(cc_ref[u]).epsilon(1e-9));
    }
    const auto t = GlobalClustering(g);
    const auto t_ref = testing::OracleTransitivity(g);
    REQUIRE(t.defined() == t_ref.has_value());
    if (t_ref) CHECK(*t.value == doctest::Approx(*t_ref).epsilon(1e-9));
    const auto r = Assortativity(g);
    const auto r_ref = testing::OracleAssortativity(g);
    REQUIRE(r.defined() == r_ref.has_value());
    if (r_ref) CHECK(*r.value == doctest::Approx(*r_ref).epsilon(1e-9));
  }
}

TEST_CASE("metrics are invariant under relabelling") {
  Rng rng = MakeRng(7, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::RandomConnected(12, 0.2, rng);
    std::vector<NodeId> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = Relabel(g, perm);
    const auto bg = Betweenness(g).values;
    const auto bh = Betweenness(h).values;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      CHECK(bg[u] == doctest::Approx(bh[perm[u]]).epsilon(1e-12));
    }
    if (Assortativity(g).defined()) {
      CHECK(*Assortativity(g).value == *Assortativity(h).value);
    }
  }
}
