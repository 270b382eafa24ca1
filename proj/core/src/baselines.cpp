// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "topoforge/error.hpp"

namespace topoforge::baselines {

BaselineKind ParseBaselineKind(std::string_view name) {
  if (name == "ba") return BaselineKind::kBA;
  if (name == "eba") return BaselineKind::kEBA;
  if (name == "dba") return BaselineKind::kDBA;
  if (name == "bb") return BaselineKind::kBB;
  throw ValidationError("unknown baseline kind '" + std::string(name) + "'");
}

std::string_view ToString(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kBA: return "ba";
    case BaselineKind::kEBA: return "eba";
    case BaselineKind::kDBA: return "dba";
    case BaselineKind::kBB: return "bb";
  }
  return "unknown";
}

void BaselineConfig::Validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (m_links < 1) throw ValidationError("m_links must be at least 1");
  if (!prob(eba_p_ba) || !prob(eba_p_add) || !prob(eba_p_rewire) ||
      !prob(dba_p_single)) {
    throw ValidationError("probabilities must lie in [0, 1]");
  }
  if (std::abs(eba_p_ba + eba_p_add + eba_p_rewire - 1.0) > 1e-9) {
    throw ValidationError("EBA probabilities must sum to 1");
  }
  if (kind == BaselineKind::kEBA && eba_p_ba <= 0.0) {
    throw ValidationError("EBA needs a positive growth probability");
  }
  if (bb_fitness.kind == FitnessSpec::Kind::kConstant && !(bb_fitness.value > 0.0)) {
    throw ValidationError("constant fitness must be positive");
  }
}

PreferentialGrowth::PreferentialGrowth(std::size_t seed_nodes,
                                       std::size_t capacity,
                                       std::vector<double> fitness, Rng& rng)
    : graph_(seed_nodes),
      fitness_(std::move(fitness)),
      tree_(capacity + 1, 0.0),
      weight_(capacity, 0.0),
      rng_(rng) {
  if (seed_nodes > capacity) throw ValidationError("seed larger than capacity");
  for (NodeId u = 0; u < seed_nodes; ++u) {
    for (NodeId v = u + 1; v < seed_nodes; ++v) Connect(u, v);
  }
}

double PreferentialGrowth::Weight(NodeId u) const {
  const double f = u < fitness_.size() ? fitness_[u] : 1.0;
  return f * static_cast<double>(graph_.degree(u));
}

void PreferentialGrowth::SetWeight(NodeId u, double w) {
  const double delta = w - weight_[u];
  if (delta == 0.0) return;
  weight_[u] = w;
  total_ += delta;
  for (std::size_t i = u + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
}

NodeId PreferentialGrowth::Sample() {
  if (!(total_ > 0.0)) throw ValidationError("no node has positive attachment weight");
  std::uniform_real_distribution<double> pick(0.0, total_);
  const std::size_t n = graph_.node_count();
  while (true) {
    double target = pick(rng_);
    // Fenwick descent: smallest index whose prefix sum exceeds target.
    std::size_t pos = 0;
    std::size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    // Accumulated rounding can land past the last positive weight.
    if (pos < n && weight_[pos] > 0.0) return static_cast<NodeId>(pos);
  }
}

void PreferentialGrowth::Connect(NodeId u, NodeId v) {
  graph_.AddEdge(u, v);
  edge_list_.emplace_back(u, v);
  SetWeight(u, Weight(u));
  SetWeight(v, Weight(v));
}

void PreferentialGrowth::AddNode(std::size_t links) {
  const std::size_t existing = graph_.node_count();
  if (existing >= weight_.size()) throw ValidationError("growth capacity exceeded");
  const NodeId fresh = graph_.AddNode();
  std::size_t candidates = 0;
  for (NodeId u = 0; u < existing; ++u) candidates += weight_[u] > 0.0 ? 1 : 0;
  links = std::min(links, candidates);
  std::vector<NodeId> chosen;
  std::vector<double> saved;
  chosen.reserve(links);
  for (std::size_t k = 0; k < links; ++k) {
    const NodeId v = Sample();
    chosen.push_back(v);
    saved.push_back(weight_[v]);
    SetWeight(v, 0.0);
  }
  for (std::size_t k = 0; k < chosen.size(); ++k) SetWeight(chosen[k], saved[k]);
  for (NodeId v : chosen) Connect(fresh, v);
}

void PreferentialGrowth::AddLinks(std::size_t links) {
  const std::size_t n = graph_.node_count();
  for (std::size_t k = 0; k < links; ++k) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto u = static_cast<NodeId>(UniformIndex(rng_, n));
      const NodeId v = Sample();
      if (u != v && !graph_.HasEdge(u, v)) {
        Connect(u, v);
        break;
      }
    }
  }
}

std::size_t PreferentialGrowth::RewireLinks(std::size_t links) {
  std::size_t done = 0;
  for (std::size_t k = 0; k < links && !edge_list_.empty(); ++k) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const std::size_t idx = UniformIndex(rng_, edge_list_.size());
      NodeId u = edge_list_[idx].u;
      NodeId v = edge_list_[idx].v;
      if (UniformIndex(rng_, 2) == 1) std::swap(u, v);
      if (graph_.degree(v) <= 1) continue;
      const NodeId w = Sample();
      if (w == u || w == v || graph_.HasEdge(u, w)) continue;
      graph_.RemoveEdge(u, v);
      graph_.AddEdge(u, w);
      edge_list_[idx] = Edge(u, w);
      SetWeight(v, Weight(v));
      SetWeight(w, Weight(w));
      ++done;
      break;
    }
  }
  return done;
}

namespace {

void CheckSize(std::size_t n, std::size_t minimum) {
  if (n < minimum) {
    throw ValidationError("requested " + std::to_string(n) +
                          " nodes, generator needs at least " +
                          std::to_string(minimum));
  }
}

Graph Grow(std::size_t n, std::size_t m, std::vector<double> fitness,
           std::uint64_t seed) {
  CheckSize(n, m + 1);
  Rng rng(seed);
  PreferentialGrowth growth(m + 1, n, std::move(fitness), rng);
  while (growth.graph().node_count() < n) growth.AddNode(m);
  return growth.Release();
}

}  // namespace

Graph GenerateBA(std::size_t n, const BaselineConfig& cfg) {
  cfg.Validate();
  return Grow(n, cfg.m_links, {}, cfg.rng_seed);
}

Graph GenerateEBA(std::size_t n, const BaselineConfig& cfg) {
  cfg.Validate();
  const std::size_t m = cfg.m_links;
  CheckSize(n, std::max<std::size_t>(3, m + 1));
  Rng rng(cfg.rng_seed);
  PreferentialGrowth growth(m + 1, n, {}, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (growth.graph().node_count() < n) {
    // A pure-growth configuration draws nothing extra, so it replays BA.
    if (cfg.eba_p_ba >= 1.0) {
      growth.AddNode(m);
      continue;
    }
    const double u = unit(rng);
    if (u < cfg.eba_p_ba) {
      growth.AddNode(m);
    } else if (u < cfg.eba_p_ba + cfg.eba_p_add) {
      growth.AddLinks(m);
    } else {
      growth.RewireLinks(m);
    }
  }
  return growth.Release();
}

Graph GenerateDBA(std::size_t n, const BaselineConfig& cfg) {
  cfg.Validate();
  const std::size_t m = cfg.m_links;
  const double p = cfg.dba_p_single;
  const std::size_t widest = p >= 1.0 ? 1 : m;
  CheckSize(n, std::max<std::size_t>(3, widest + 1));
  Rng rng(cfg.rng_seed);
  PreferentialGrowth growth(widest + 1, n, {}, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (growth.graph().node_count() < n) {
    std::size_t links = widest;
    if (p > 0.0 && p < 1.0) links = unit(rng) < p ? 1 : m;
    growth.AddNode(links);
  }
  return growth.Release();
}

Graph GenerateBB(std::size_t n, const BaselineConfig& cfg) {
  cfg.Validate();
  std::vector<double> fitness;
  if (!cfg.bb_fitness_values.empty()) {
    if (cfg.bb_fitness_values.size() < n) {
      throw ValidationError("bb_fitness_values shorter than node count");
    }
    fitness.assign(cfg.bb_fitness_values.begin(), cfg.bb_fitness_values.begin() + n);
  } else if (cfg.bb_fitness.kind == FitnessSpec::Kind::kConstant) {
    fitness.assign(n, cfg.bb_fitness.value);
  } else {
    // Separate stream: the attachment draws stay aligned with BA.
    Rng fit_rng = MakeRng(cfg.rng_seed, 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    fitness.resize(n);
    for (double& f : fitness) f = 1.0 - unit(fit_rng);
  }
  return Grow(n, cfg.m_links, std::move(fitness), cfg.rng_seed);
}

Graph Generate(std::size_t n, const BaselineConfig& cfg) {
  switch (cfg.kind) {
    case BaselineKind::kBA: return GenerateBA(n, cfg);
    case BaselineKind::kEBA: return GenerateEBA(n, cfg);
    case BaselineKind::kDBA: return GenerateDBA(n, cfg);
    case BaselineKind::kBB: return GenerateBB(n, cfg);
  }
  throw ValidationError("unknown baseline kind");
}

double GammaLogLikelihood(const GammaParams& p, std::span<const double> samples) {
  if (!(p.shape > 0.0) || !(p.scale > 0.0)) return -INFINITY;
  const double norm = std::log(p.scale) + std::lgamma(p.shape);
  double ll = 0.0;
  for (double x : samples) {
    const double y = (x - p.location) / p.scale;
    if (!(y > 0.0)) return -INFINITY;
    ll += (p.shape - 1.0) * std::log(y) - y - norm;
  }
  return ll;
}

namespace {

template <typename F>
double GoldenSectionMax(F&& f, double lo, double hi, int iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-13 * (1.0 + std::abs(a)); ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

GammaParams ProfileShape(std::span<const double> samples, double location) {
  double mean_offset = 0.0;
  for (double x : samples) mean_offset += x - location;
  mean_offset /= static_cast<double>(samples.size());
  auto at = [&](double log_shape) {
    const double a = std::exp(log_shape);
    return GammaParams{a, mean_offset / a, location};
  };
  const double best = GoldenSectionMax(
      [&](double t) { return GammaLogLikelihood(at(t), samples); },
      std::log(1e-3), std::log(1e3));
  return at(best);
}

}  // namespace

GammaParams FitGammaMle(std::span<const double> samples,
                        const GammaFitOptions& options) {
  if (samples.size() < 10) throw ValidationError("gamma fit needs at least 10 samples");
  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) throw ValidationError("gamma fit needs non-constant samples");
  if (!options.free_location) {
    return ProfileShape(samples, lo - options.location_epsilon);
  }
  const double span = hi - lo;
  const double m = GoldenSectionMax(
      [&](double loc) {
        return GammaLogLikelihood(ProfileShape(samples, loc), samples);
      },
      lo - span, lo - 1e-6 * span, 120);
  return ProfileShape(samples, m);
}

std::size_t SampleNodeCount(const GammaParams& p, std::size_t n_min,
                            std::size_t n_max, Rng& rng) {
  if (n_min >= n_max) throw ValidationError("node-count bounds need n_min < n_max");
  if (!(p.shape > 0.0) || !(p.scale > 0.0)) {
    throw ValidationError("gamma shape and scale must be positive");
  }
  std::gamma_distribution<double> gamma(p.shape, 1.0);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double x = std::round(p.location + p.scale * gamma(rng));
    if (x >= static_cast<double>(n_min) && x <= static_cast<double>(n_max)) {
      return static_cast<std::size_t>(x);
    }
  }
  throw BudgetExhausted("gamma node-count sampler rejected 10^6 draws in [" +
                        std::to_string(n_min) + ", " + std::to_string(n_max) + "]");
}

}  // namespace topoforge::baselines
