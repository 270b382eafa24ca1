// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "topoforge/error.hpp"
#include "topoforge/eval.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;

namespace {

MetricDistribution Dist(std::vector<double> support, std::vector<double> weights) {
  return {MetricKind::kDegree, std::move(support), std::move(weights)};
}

MetricDistribution RandomDist(Rng& rng) {
  std::vector<double> xs(1 + UniformIndex(rng, 6));
  for (double& x : xs) x = static_cast<double>(UniformIndex(rng, 10)) * 0.5;
  return EmpiricalDistribution(MetricKind::kDegree, xs);
}

}  // namespace

TEST_CASE("metric distributions of small graphs") {
  const auto tri = MetricDistributionOf(testing::Complete(3), MetricKind::kDegree);
  REQUIRE(tri);
  CHECK(tri->support == std::vector<double>{2.0});
  CHECK(tri->weights == std::vector<double>{1.0});

  const auto star = MetricDistributionOf(testing::Star(4), MetricKind::kBetweenness);
  REQUIRE(star);
  CHECK(star->support == std::vector<double>{0.0, 1.0});
  CHECK(star->weights[0] == doctest::Approx(0.8));
  CHECK(star->weights[1] == doctest::Approx(0.2));
  CHECK(star->Valid());

  Graph cycle = testing::Path(5);
  cycle.AddEdge(4, 0);
  CHECK_FALSE(MetricDistributionOf(cycle, MetricKind::kAssortativity));
  const auto r = MetricDistributionOf(testing::Star(4), MetricKind::kAssortativity);
  REQUIRE(r);
  CHECK(r->support[0] == doctest::Approx(-1.0));
  CHECK_FALSE(MetricDistributionOf(Graph(), MetricKind::kDegree));
}

TEST_CASE("metric names") {
  CHECK(ParseMetricKind("clustering") == MetricKind::kClustering);
  CHECK_THROWS_AS(ParseMetricKind("pagerank"), ValidationError);
}

TEST_CASE("Wasserstein closed forms") {
  const auto zero = Dist({0.0}, {1.0});
  const auto three = Dist({3.0}, {1.0});
  const auto coin = Dist({0.0, 1.0}, {0.5, 0.5});
  CHECK(Wasserstein1d(zero, zero) == 0.0);
  CHECK(Wasserstein1d(zero, three) == 3.0);
  CHECK(Wasserstein1d(coin, zero) == 0.5);
  CHECK(Wasserstein1d(zero, coin) == 0.5);
  // Uniform on {0,1,2} vs point at 1: |F| gaps 1/3 on [0,1), 1/3 on [1,2).
  CHECK(Wasserstein1d(Dist({0, 1, 2}, {1.0 / 3, 1.0 / 3, 1.0 / 3}), Dist({1}, {1})) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("Wasserstein triangle inequality and symmetry") {
  Rng rng = MakeRng(1, 0);
  for (int t = 0; t < 500; ++t) {
    const auto a = RandomDist(rng);
    const auto b = RandomDist(rng);
    const auto c = RandomDist(rng);
    CHECK(Wasserstein1d(a, c) <= Wasserstein1d(a, b) + Wasserstein1d(b, c) + 1e-10);
    CHECK(Wasserstein1d(a, b) == Wasserstein1d(b, a));
  }
}

TEST_CASE("kernel values") {
  const auto p = Dist({1.0, 2.0}, {0.25, 0.75});
  CHECK(KernelW(p, p, 0.7) == 1.0);
  const double sigma = 1.5;
  const auto far = Dist({2.0 * sigma * sigma}, {1.0});
  CHECK(KernelW(Dist({0.0}, {1.0}), far, sigma) == doctest::Approx(std::exp(-1.0)));
  CHECK(KernelW(Dist({0}, {1}), Dist({1}, {1}), 1.0) > KernelW(Dist({0}, {1}), Dist({2}, {1}), 1.0));
}

TEST_CASE("MMD identities") {
  Rng rng = MakeRng(2, 0);
  std::vector<MetricDistribution> p;
  std::vector<MetricDistribution> q;
  for (int i = 0; i < 25; ++i) p.push_back(RandomDist(rng));
  for (int i = 0; i < 18; ++i) q.push_back(RandomDist(rng));
  CHECK(std::abs(MmdSquared(p, p, 1.0)) <= 1e-12);
  CHECK(MmdSquared(p, q, 0.8) == MmdSquared(q, p, 0.8));
  CHECK(MmdSquared(p, q, 0.8) >= -1e-12);
  auto shuffled = p;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  CHECK(std::abs(MmdSquared(p, shuffled, 1.0)) <= 1e-12);

  const double d = 1.25;
  const double sigma = 0.9;
  const std::vector<MetricDistribution> one{Dist({0.0}, {1.0})};
  const std::vector<MetricDistribution> other{Dist({d}, {1.0})};
  CHECK(MmdSquared(one, other, sigma) ==
        doctest::Approx(2.0 - 2.0 * std::exp(-d / (2 * sigma * sigma))).epsilon(1e-14));

  CHECK_THROWS_AS(MmdSquared({}, q, 1.0), ValidationError);
  CHECK_THROWS_AS(MmdSquared(p, q, 0.0), ValidationError);
  CHECK_THROWS_AS(MmdSquared(one, other, 1.0, MmdEstimator::kUnbiased), ValidationError);
  CHECK(MmdSquared(p, q, 0.8, MmdEstimator::kUnbiased) ==
        MmdSquared(q, p, 0.8, MmdEstimator::kUnbiased));
}

TEST_CASE("median heuristic") {
  const std::vector<MetricDistribution> d{Dist({0}, {1}), Dist({4}, {1})};
  Rng rng = MakeRng(3, 0);
  CHECK(MedianSigma(d, rng) == 2.0);  // every probe has W = 4
  const std::vector<MetricDistribution> same(5, Dist({1}, {1}));
  CHECK(MedianSigma(same, rng) == 1.0);
}

TEST_CASE("bootstrap protocol") {
  const auto paths = [] {
    std::vector<Graph> v;
    for (std::size_t n = 5; n < 25; ++n) v.push_back(testing::Path(n));
    return v;
  }();
  const auto stars = [] {
    std::vector<Graph> v;
    for (std::size_t n = 4; n < 24; ++n) v.push_back(testing::Star(n));
    return v;
  }();
  BootstrapConfig cfg;
  cfg.sample_size = 20;
  cfg.repetitions = 10;
  cfg.rng_seed = 7;
  const auto self = BootstrapMmd(paths, paths, MetricKind::kDegree, cfg);
  const auto cross = BootstrapMmd(paths, stars, MetricKind::kDegree, cfg);
  CHECK(self.point_estimates.size() == 10);
  CHECK(self.mean > 0.0);
  CHECK(cross.mean > 10.0 * self.mean);
  CHECK(cross.stddev >= 0.0);
  CHECK_FALSE(cross.stddev_degenerate);

  const auto again = BootstrapMmd(paths, stars, MetricKind::kDegree, cfg);
  CHECK(again.point_estimates == cross.point_estimates);

  double mean = 0.0;
  for (double v : cross.point_estimates) mean += v;
  CHECK(cross.mean == doctest::Approx(mean / 10.0));

  cfg.repetitions = 1;
  const auto single = BootstrapMmd(paths, stars, MetricKind::kDegree, cfg);
  CHECK(single.stddev == 0.0);
  CHECK(single.stddev_degenerate);
}

TEST_CASE("graphs with undefined metrics are dropped and counted") {
  std::vector<Graph> real{testing::Star(5), testing::Path(6), testing::Complete(4)};
  std::vector<Graph> synth{testing::Star(3), testing::Complete(5)};
  BootstrapConfig cfg;
  cfg.sample_size = 4;
  cfg.repetitions = 3;
  const auto rep = BootstrapMmd(real, synth, MetricKind::kAssortativity, cfg);
  CHECK(rep.real_dropped == 1);
  CHECK(rep.synth_dropped == 1);
  const std::vector<Graph> regular{testing::Complete(4)};
  CHECK_THROWS_AS(BootstrapMmd(regular, synth, MetricKind::kAssortativity, cfg),
                  ValidationError);
}

TEST_CASE("histogram dump") {
  const std::vector<MetricDistribution> r{Dist({1, 2}, {0.5, 0.5})};
  const std::vector<MetricDistribution> s{Dist({2}, {1.0}), Dist({3}, {1.0})};
  std::ostringstream out;
  WriteHistogramCsv(out, r, s);
  CHECK(out.str() == "value,real_mass,synth_mass\n1,0.5,0\n2,0.5,0.5\n3,0,0.5\n");
}
