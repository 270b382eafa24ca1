// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <string>

#include "topoforge/error.hpp"
#include "topoforge/metrics.hpp"
#include "topoforge/parallel.hpp"

namespace topoforge {

std::string_view ToString(MetricKind kind) {
  switch (kind) {
    case MetricKind::kDegree: return "degree";
    case MetricKind::kClustering: return "clustering";
    case MetricKind::kBetweenness: return "betweenness";
    case MetricKind::kAssortativity: return "assortativity";
  }
  return "unknown";
}

MetricKind ParseMetricKind(std::string_view text) {
  for (MetricKind k : {MetricKind::kDegree, MetricKind::kClustering,
                       MetricKind::kBetweenness, MetricKind::kAssortativity}) {
    if (text == ToString(k)) return k;
  }
  throw ValidationError("unknown metric '" + std::string(text) + "'");
}

bool MetricDistribution::Valid(double tol) const {
  if (support.size() != weights.size() || support.empty()) return false;
  double total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!std::isfinite(support[i]) || !(weights[i] >= 0.0)) return false;
    if (i > 0 && !(support[i - 1] < support[i])) return false;
    total += weights[i];
  }
  return std::abs(total - 1.0) <= tol;
}

MetricDistribution EmpiricalDistribution(MetricKind kind,
                                         std::span<const double> values) {
  if (values.empty()) throw ValidationError("empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  MetricDistribution d{kind, {}, {}};
  std::vector<std::size_t> counts;
  for (double v : sorted) {
    if (d.support.empty() || d.support.back() != v) {
      d.support.push_back(v);
      counts.push_back(0);
    }
    ++counts.back();
  }
  const double n = static_cast<double>(sorted.size());
  d.weights.reserve(counts.size());
  for (std::size_t c : counts) d.weights.push_back(static_cast<double>(c) / n);
  return d;
}

std::optional<MetricDistribution> MetricDistributionOf(const Graph& g,
                                                       MetricKind kind) {
  if (g.node_count() == 0) return std::nullopt;
  switch (kind) {
    case MetricKind::kDegree:
      return EmpiricalDistribution(kind, DegreeVector(g).values);
    case MetricKind::kClustering:
      return EmpiricalDistribution(kind, LocalClustering(g).values);
    case MetricKind::kBetweenness:
      return EmpiricalDistribution(kind, Betweenness(g).values);
    case MetricKind::kAssortativity: {
      const ScalarMetric r = Assortativity(g);
      if (!r.defined()) return std::nullopt;
      return MetricDistribution{kind, {*r.value}, {1.0}};
    }
  }
  return std::nullopt;
}

double Wasserstein1d(const MetricDistribution& p, const MetricDistribution& q) {
  std::size_t i = 0;
  std::size_t j = 0;
  double fp = 0.0;
  double fq = 0.0;
  double total = 0.0;
  double x = 0.0;
  bool started = false;
  while (i < p.support.size() || j < q.support.size()) {
    double next;
    if (j >= q.support.size() ||
        (i < p.support.size() && p.support[i] <= q.support[j])) {
      next = p.support[i];
    } else {
      next = q.support[j];
    }
    if (started) total += std::abs(fp - fq) * (next - x);
    while (i < p.support.size() && p.support[i] == next) fp += p.weights[i++];
    while (j < q.support.size() && q.support[j] == next) fq += q.weights[j++];
    x = next;
    started = true;
  }
  return total;
}

double KernelW(const MetricDistribution& p, const MetricDistribution& q,
               double sigma) {
  return std::exp(-Wasserstein1d(p, q) / (2.0 * sigma * sigma));
}

namespace {

// Mean kernel value over a x b, optionally without the diagonal of a x a.
double KernelMean(std::span<const MetricDistribution> a,
                  std::span<const MetricDistribution> b, double sigma,
                  bool skip_diagonal) {
  std::vector<double> rows(a.size(), 0.0);
  ParallelFor(a.size(), [&](std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (skip_diagonal && i == j) continue;
      s += KernelW(a[i], b[j], sigma);
    }
    rows[i] = s;
  });
  const double total = std::accumulate(rows.begin(), rows.end(), 0.0);
  const double pairs = skip_diagonal
                           ? static_cast<double>(a.size()) *
                                 static_cast<double>(a.size() - 1)
                           : static_cast<double>(a.size()) *
                                 static_cast<double>(b.size());
  return total / pairs;
}

}  // namespace

double MmdSquared(std::span<const MetricDistribution> p,
                  std::span<const MetricDistribution> q, double sigma,
                  MmdEstimator estimator) {
  if (p.empty() || q.empty()) throw ValidationError("MMD needs nonempty sets");
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  const bool unbiased = estimator == MmdEstimator::kUnbiased;
  if (unbiased && (p.size() < 2 || q.size() < 2)) {
    throw ValidationError("the unbiased estimator needs two elements per set");
  }
  // Evaluate in a canonical orientation so that swapping the arguments
  // reproduces the same floating-point operations.
  if (std::lexicographical_compare(q.begin(), q.end(), p.begin(), p.end())) {
    std::swap(p, q);
  }
  const double kxx = KernelMean(p, p, sigma, unbiased);
  const double kyy = KernelMean(q, q, sigma, unbiased);
  const double kxy = KernelMean(p, q, sigma, false);
  return kxx + kyy - 2.0 * kxy;
}

double MedianSigma(std::span<const MetricDistribution> dists, Rng& rng,
                   std::size_t probes) {
  if (dists.empty()) throw ValidationError("cannot pick sigma from no data");
  std::vector<double> w;
  w.reserve(probes);
  for (std::size_t t = 0; t < probes && dists.size() > 1; ++t) {
    const std::size_t a = UniformIndex(rng, dists.size());
    std::size_t b = UniformIndex(rng, dists.size() - 1);
    if (b >= a) ++b;
    w.push_back(Wasserstein1d(dists[a], dists[b]));
  }
  if (w.empty()) return 1.0;
  const auto mid = w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2);
  std::nth_element(w.begin(), mid, w.end());
  double median = *mid;
  if (w.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(w.begin(), mid));
  }
  return median > 0.0 ? std::sqrt(median) : 1.0;
}

MmdReport BootstrapMmd(std::span<const MetricDistribution> real,
                       std::span<const MetricDistribution> synth,
                       const BootstrapConfig& cfg) {
  if (real.empty() || synth.empty()) {
    throw ValidationError("bootstrap needs nonempty corpora");
  }
  if (cfg.sample_size == 0 || cfg.repetitions == 0) {
    throw ValidationError("sample size and repetitions must be positive");
  }
  MmdReport rep;
  rep.kind = real.front().kind;
  rep.sample_size = cfg.sample_size;
  rep.repetitions = cfg.repetitions;
  rep.estimator = cfg.estimator;
  rep.real_used = real.size();
  rep.synth_used = synth.size();
  if (cfg.sigma) {
    rep.sigma = *cfg.sigma;
  } else {
    Rng probe = MakeRng(cfg.rng_seed, ~std::uint64_t{0});
    rep.sigma = MedianSigma(real, probe);
  }

  std::vector<MetricDistribution> xs(cfg.sample_size);
  std::vector<MetricDistribution> ys(cfg.sample_size);
  std::vector<std::size_t> pool(synth.size());
  for (std::size_t r = 0; r < cfg.repetitions; ++r) {
    Rng rng = MakeRng(cfg.rng_seed, r);
    for (auto& x : xs) x = real[UniformIndex(rng, real.size())];
    if (synth.size() >= cfg.sample_size) {
      std::iota(pool.begin(), pool.end(), std::size_t{0});
      for (std::size_t i = 0; i < cfg.sample_size; ++i) {
        const std::size_t k = i + UniformIndex(rng, pool.size() - i);
        std::swap(pool[i], pool[k]);
        ys[i] = synth[pool[i]];
      }
    } else {
      for (auto& y : ys) y = synth[UniformIndex(rng, synth.size())];
    }
    rep.point_estimates.push_back(MmdSquared(xs, ys, rep.sigma, cfg.estimator));
  }

  const double n = static_cast<double>(rep.point_estimates.size());
  rep.mean = std::accumulate(rep.point_estimates.begin(),
                             rep.point_estimates.end(), 0.0) / n;
  if (rep.point_estimates.size() > 1) {
    double ss = 0.0;
    for (double v : rep.point_estimates) ss += (v - rep.mean) * (v - rep.mean);
    rep.stddev = std::sqrt(ss / (n - 1.0));
  } else {
    rep.stddev_degenerate = true;
  }
  return rep;
}

DistributionSet CollectDistributions(std::span<const Graph> graphs,
                                     MetricKind kind) {
  std::vector<std::optional<MetricDistribution>> all(graphs.size());
  ParallelFor(graphs.size(), [&](std::size_t i) {
    all[i] = MetricDistributionOf(graphs[i], kind);
  });
  DistributionSet out;
  for (auto& d : all) {
    if (d) {
      out.dists.push_back(std::move(*d));
    } else {
      ++out.dropped;
    }
  }
  return out;
}

MmdReport BootstrapMmd(std::span<const Graph> real, std::span<const Graph> synth,
                       MetricKind kind, const BootstrapConfig& cfg) {
  const DistributionSet r = CollectDistributions(real, kind);
  const DistributionSet s = CollectDistributions(synth, kind);
  if (r.dists.empty() || s.dists.empty()) {
    throw ValidationError("no graph with a defined " +
                          std::string(ToString(kind)) + " metric on the " +
                          (r.dists.empty() ? "real" : "synthetic") + " side");
  }
  MmdReport rep = BootstrapMmd(r.dists, s.dists, cfg);
  rep.kind = kind;
  rep.real_dropped = r.dropped;
  rep.synth_dropped = s.dropped;
  return rep;
}

void WriteHistogramCsv(std::ostream& out,
                       std::span<const MetricDistribution> real,
                       std::span<const MetricDistribution> synth) {
  std::map<double, std::pair<double, double>> pooled;
  for (const auto& d : real) {
    for (std::size_t i = 0; i < d.support.size(); ++i) {
      pooled[d.support[i]].first += d.weights[i] / static_cast<double>(real.size());
    }
  }
  for (const auto& d : synth) {
    for (std::size_t i = 0; i < d.support.size(); ++i) {
      pooled[d.support[i]].second +=
          d.weights[i] / static_cast<double>(synth.size());
    }
  }
  out << "value,real_mass,synth_mass\n" << std::setprecision(17);
  for (const auto& [v, m] : pooled) {
    out << v << ',' << m.first << ',' << m.second << '\n';
  }
}

}  // namespace topoforge
