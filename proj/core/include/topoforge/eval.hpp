// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "topoforge/graph.hpp"
#include "topoforge/random.hpp"

namespace topoforge {

enum class MetricKind { kDegree, kClustering, kBetweenness, kAssortativity };

std::string_view ToString(MetricKind kind);
MetricKind ParseMetricKind(std::string_view text);

// Finite distribution on the real line: strictly increasing support with
// non-negative masses summing to one.
struct MetricDistribution {
  MetricKind kind = MetricKind::kDegree;
  std::vector<double> support;
  std::vector<double> weights;

  bool Valid(double tol = 1e-12) const;
  friend auto operator<=>(const MetricDistribution&,
                          const MetricDistribution&) = default;
};

// Empirical distribution of a sample; equal values share one support point.
MetricDistribution EmpiricalDistribution(MetricKind kind,
                                         std::span<const double> values);

// Per-node metrics give the node-value histogram, assortativity a point
// mass. nullopt when the metric is undefined (empty graph, zero degree
// variance).
std::optional<MetricDistribution> MetricDistributionOf(const Graph& g,
                                                       MetricKind kind);

// Exact W1 as the integral of |F_p - F_q| over the merged support.
double Wasserstein1d(const MetricDistribution& p, const MetricDistribution& q);

// exp(-W1(p, q) / (2 sigma^2)).
double KernelW(const MetricDistribution& p, const MetricDistribution& q,
               double sigma);

enum class MmdEstimator { kBiased, kUnbiased };

// MMD^2 = E k(x,x') - 2 E k(x,y) + E k(y,y'). The biased (V) form keeps the
// diagonal; the unbiased (U) form drops it and needs two elements per side.
// Symmetric in its arguments bit for bit. Throws ValidationError on empty
// sets or sigma <= 0.
double MmdSquared(std::span<const MetricDistribution> p,
                  std::span<const MetricDistribution> q, double sigma,
                  MmdEstimator estimator = MmdEstimator::kBiased);

// Median heuristic: sigma^2 is the median W1 over `probes` random pairs
// (1 when every probed distance is zero).
double MedianSigma(std::span<const MetricDistribution> dists, Rng& rng,
                   std::size_t probes = 200);

struct BootstrapConfig {
  std::size_t sample_size = 500;
  std::size_t repetitions = 100;
  std::optional<double> sigma;  // median heuristic over the real side if unset
  std::uint64_t rng_seed = 0;
  MmdEstimator estimator = MmdEstimator::kBiased;
};

struct MmdReport {
  MetricKind kind = MetricKind::kDegree;
  std::vector<double> point_estimates;  // one mmd_squared per repetition
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation of point_estimates
  bool stddev_degenerate = false;  // a single repetition; stddev is 0
  std::size_t sample_size = 0;
  std::size_t repetitions = 0;
  double sigma = 0.0;
  MmdEstimator estimator = MmdEstimator::kBiased;
  std::size_t real_used = 0;
  std::size_t synth_used = 0;
  std::size_t real_dropped = 0;  // graphs with an undefined metric
  std::size_t synth_dropped = 0;
};

// Per repetition: sample_size real distributions with replacement and
// sample_size synthetic ones (without replacement when the synthetic side
// is large enough), then MmdSquared. Repetition r uses MakeRng(seed, r).
MmdReport BootstrapMmd(std::span<const MetricDistribution> real,
                       std::span<const MetricDistribution> synth,
                       const BootstrapConfig& cfg);

// Computes the distributions first and counts the graphs it drops. Throws
// ValidationError when either side has no graph with a defined metric.
MmdReport BootstrapMmd(std::span<const Graph> real, std::span<const Graph> synth,
                       MetricKind kind, const BootstrapConfig& cfg);

struct DistributionSet {
  std::vector<MetricDistribution> dists;
  std::size_t dropped = 0;
};
DistributionSet CollectDistributions(std::span<const Graph> graphs,
                                     MetricKind kind);

// Pooled histogram (mean of the per-graph distributions) of both sides as
// CSV: value,real_mass,synth_mass.
void WriteHistogramCsv(std::ostream& out,
                       std::span<const MetricDistribution> real,
                       std::span<const MetricDistribution> synth);

}  // namespace topoforge
