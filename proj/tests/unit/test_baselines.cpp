// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "gamma_oracle.hpp"
#include "topoforge/baselines.hpp"
#include "topoforge/error.hpp"
#include "topoforge/metrics.hpp"

using namespace topoforge;
using namespace topoforge::baselines;

namespace {

BaselineConfig Config(BaselineKind kind, std::uint64_t seed) {
  BaselineConfig cfg;
  cfg.kind = kind;
  cfg.rng_seed = seed;
  return cfg;
}

void CheckSimple(const Graph& g, std::size_t n) {
  CHECK(g.node_count() == n);
  CHECK(IsConnected(g));
  std::size_t sum = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) sum += g.degree(u);
  CHECK(sum == 2 * g.edge_count());
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (auto k : {BaselineKind::kBA, BaselineKind::kEBA, BaselineKind::kDBA, BaselineKind::kBB}) {
    CHECK(ParseBaselineKind(ToString(k)) == k);
  }
  CHECK_THROWS_AS(ParseBaselineKind("orbis"), ValidationError);
}

TEST_CASE("BA edge count and degree floor") {
  const Graph g = GenerateBA(100, Config(BaselineKind::kBA, 1));
  CheckSimple(g, 100);
  CHECK(g.edge_count() == 3 + 97 * 2);  // 3-clique seed, two links per arrival
  for (NodeId u = 0; u < g.node_count(); ++u) CHECK(g.degree(u) >= 2);
  CHECK(GenerateBA(100, Config(BaselineKind::kBA, 1)) == g);
  CHECK_FALSE(GenerateBA(100, Config(BaselineKind::kBA, 2)) == g);
}

TEST_CASE("every generator emits connected simple graphs of the requested size") {
  for (auto k : {BaselineKind::kBA, BaselineKind::kEBA, BaselineKind::kDBA, BaselineKind::kBB}) {
    for (std::size_t n : {12u, 57u, 250u}) {
      CheckSimple(Generate(n, Config(k, n)), n);
    }
  }
}

TEST_CASE("config validation") {
  BaselineConfig cfg;
  cfg.kind = BaselineKind::kEBA;
  cfg.eba_p_ba = 0.0;
  cfg.eba_p_add = 0.5;
  cfg.eba_p_rewire = 0.5;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);
  cfg.eba_p_ba = 0.6;
  CHECK_THROWS_AS(cfg.Validate(), ValidationError);  // sums to 1.6
  BaselineConfig zero_m;
  zero_m.m_links = 0;
  CHECK_THROWS_AS(zero_m.Validate(), ValidationError);
}

TEST_CASE("degeneration identities hold bit for bit") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph ba = GenerateBA(300, Config(BaselineKind::kBA, seed));
    BaselineConfig eba = Config(BaselineKind::kEBA, seed);
    eba.eba_p_ba = 1.0;
    eba.eba_p_add = 0.0;
    eba.eba_p_rewire = 0.0;
    CHECK(GenerateEBA(300, eba) == ba);
    BaselineConfig dba = Config(BaselineKind::kDBA, seed);
    dba.dba_p_single = 0.0;
    CHECK(GenerateDBA(300, dba) == ba);
    BaselineConfig bb = Config(BaselineKind::kBB, seed);
    bb.bb_fitness = {FitnessSpec::Kind::kConstant, 1.0};
    CHECK(GenerateBB(300, bb) == ba);
  }
}

TEST_CASE("DBA with only single links grows a tree") {
  BaselineConfig cfg = Config(BaselineKind::kDBA, 3);
  cfg.dba_p_single = 1.0;
  const Graph g = GenerateDBA(80, cfg);
  CheckSimple(g, 80);
  CHECK(g.edge_count() == 79);
}

TEST_CASE("EBA adds edges beyond pure growth") {
  const Graph g = GenerateEBA(400, Config(BaselineKind::kEBA, 6));
  CheckSimple(g, 400);
  CHECK(g.edge_count() > 3 + 397 * 2);
}

TEST_CASE("a very fit node becomes the hub") {
  int wins = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    BaselineConfig cfg = Config(BaselineKind::kBB, 100 + trial);
    cfg.bb_fitness_values.assign(200, 1.0);
    cfg.bb_fitness_values[10] = 1e6;
    const Graph g = GenerateBB(200, cfg);
    bool top = true;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      if (u != 10 && g.degree(u) >= g.degree(10)) top = false;
    }
    wins += top;
  }
  CHECK(wins > 10);
}

TEST_CASE("gamma likelihood and fit") {
  SUBCASE("constant samples are degenerate") {
    const std::vector<double> same(20, 5.0);
    CHECK_THROWS_AS(FitGammaMle(same), ValidationError);
    CHECK_THROWS_AS(FitGammaMle(std::vector<double>{1, 2, 3}), ValidationError);
  }
  SUBCASE("recovers the generating shape and scale") {
    Rng rng = MakeRng(17, 0);
    std::gamma_distribution<double> gamma(0.852, 59.64);
    std::vector<double> xs(50000);
    for (double& x : xs) x = 11.99 + gamma(rng);
    const GammaParams p = FitGammaMle(xs);
    CHECK(p.shape == doctest::Approx(0.852).epsilon(0.10));
    CHECK(p.scale == doctest::Approx(59.64).epsilon(0.10));
    CHECK(p.location < *std::min_element(xs.begin(), xs.end()));
  }
  SUBCASE("exponential data gives shape one") {
    Rng rng = MakeRng(18, 0);
    std::exponential_distribution<double> expo(1.0 / 20.0);
    std::vector<double> xs(20000);
    for (double& x : xs) x = 5.0 + expo(rng);
    CHECK(FitGammaMle(xs).shape == doctest::Approx(1.0).epsilon(0.10));
  }
  SUBCASE("returned point is a local maximum on a grid") {
    Rng rng = MakeRng(19, 0);
    std::gamma_distribution<double> gamma(2.5, 4.0);
    std::vector<double> xs(2000);
    for (double& x : xs) x = 3.0 + gamma(rng);
    const GammaParams p = FitGammaMle(xs);
    const double ll = GammaLogLikelihood(p, xs);
    for (int i = -5; i < 5; ++i) {
      for (int j = -5; j < 5; ++j) {
        GammaParams q = p;
        q.shape *= 1.0 + 0.01 * (i + 0.5);
        q.scale *= 1.0 + 0.01 * (j + 0.5);
        CHECK(GammaLogLikelihood(q, xs) <= ll + 1e-9);
      }
    }
  }
}

TEST_CASE("log-likelihood matches the density formula") {
  const GammaParams p{2.0, 3.0, 1.0};
  const std::vector<double> xs{4.0};
  // y = 1: log(y^(a-1) e^-y / (s Gamma(a))) = -1 - log 3.
  CHECK(GammaLogLikelihood(p, xs) == doctest::Approx(-1.0 - std::log(3.0)));
  CHECK(std::isinf(GammaLogLikelihood(p, std::vector<double>{0.5})));
}

TEST_CASE("node-count sampler") {
  const GammaParams fitted{0.852, 59.64, 11.99};
  SUBCASE("narrow bounds") {
    Rng rng = MakeRng(1, 0);
    for (int i = 0; i < 1000; ++i) {
      const auto n = SampleNodeCount(fitted, 50, 51, rng);
      CHECK((n == 50 || n == 51));
    }
  }
  SUBCASE("seeded reproducibility") {
    Rng a = MakeRng(2, 0);
    Rng b = MakeRng(2, 0);
    for (int i = 0; i < 100; ++i) {
      CHECK(SampleNodeCount(fitted, 12, 250, a) == SampleNodeCount(fitted, 12, 250, b));
    }
  }
  SUBCASE("unreachable bounds exhaust the budget") {
    Rng rng = MakeRng(3, 0);
    CHECK_THROWS_AS(SampleNodeCount(GammaParams{1.0, 1.0, 0.0}, 5000, 5001, rng),
                    BudgetExhausted);
  }
  SUBCASE("empirical mean matches the truncated-density mean") {
    Rng rng = MakeRng(5, 0);
    double sum = 0.0;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
      sum += static_cast<double>(SampleNodeCount(fitted, 12, 250, rng));
    }
    const double oracle = testing::TruncatedRoundedGammaMean(0.852, 59.64, 11.99, 12, 250);
    CHECK(sum / draws == doctest::Approx(oracle).epsilon(3.0 / oracle));
  }
  SUBCASE("bad arguments") {
    Rng rng = MakeRng(4, 0);
    CHECK_THROWS_AS(SampleNodeCount(fitted, 12, 12, rng), ValidationError);
  }
}
