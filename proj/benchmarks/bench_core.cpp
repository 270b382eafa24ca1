// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <benchmark/benchmark.h>

#include <vector>

#include "topoforge/baselines.hpp"
#include "topoforge/community.hpp"
#include "topoforge/dggm/model.hpp"
#include "topoforge/dggm/sequence.hpp"
#include "topoforge/eval.hpp"
#include "topoforge/metrics.hpp"
#include "toy_corpus.hpp"

using namespace topoforge;

namespace {

Graph BaGraph(std::size_t n) {
  baselines::BaselineConfig cfg;
  cfg.rng_seed = 1;
  return baselines::GenerateBA(n, cfg);
}

void BM_Betweenness(benchmark::State& state) {
  const Graph g = BaGraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Betweenness(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_Louvain(benchmark::State& state) {
  const Graph g = BaGraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(community::Louvain(g, 3));
}
BENCHMARK(BM_Louvain)->Arg(1000)->Arg(5000);

void BM_FrmExtract(benchmark::State& state) {
  const Graph g = BaGraph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(community::FrmExtract(g, {}));
}
BENCHMARK(BM_FrmExtract)->Arg(5000);

void BM_MmdDegree(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = CollectDistributions(testing::ToyCorpus(n, 20, 120, 0.05, 1),
                                      MetricKind::kDegree).dists;
  const auto b = CollectDistributions(testing::ToyCorpus(n, 20, 120, 0.05, 2),
                                      MetricKind::kDegree).dists;
  for (auto _ : state) benchmark::DoNotOptimize(MmdSquared(a, b, 1.0));
}
BENCHMARK(BM_MmdDegree)->Arg(100)->Arg(500);

struct GruFixture {
  dggm::ModelParams params;
  dggm::EdgeSequence seq;

  explicit GruFixture(std::size_t nodes) {
    dggm::ModelDims dims;
    dims.m_dim = 16;
    params = dggm::ModelParams::Initialized(dims, 7);
    Rng rng = MakeRng(7, 1);
    const Graph g = testing::RandomConnected(nodes, 0.05, rng);
    const auto order = dggm::BfsOrder(g, rng);
    seq = dggm::ToSequence(g, order, dims.m_dim);
  }
};

void BM_GruForward(benchmark::State& state) {
  const GruFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dggm::Forward(f.params, f.seq));
}
BENCHMARK(BM_GruForward)->Arg(50)->Arg(200);

void BM_GruForwardBackward(benchmark::State& state) {
  const GruFixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const auto fwd = dggm::Forward(f.params, f.seq);
    benchmark::DoNotOptimize(dggm::Backward(f.params, *fwd.cache, f.seq));
  }
}
BENCHMARK(BM_GruForwardBackward)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
