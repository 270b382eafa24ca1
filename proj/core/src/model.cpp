// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/dggm/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gru_cell.hpp"
#include "topoforge/checksum.hpp"
#include "topoforge/error.hpp"
#include "topoforge/random.hpp"

namespace topoforge::dggm {

using internal::ConstMat;
using internal::ConstVecMap;
using internal::GruStep;
using internal::MutMat;
using internal::MutVecMap;
using internal::Vec;

void ModelDims::Validate() const {
  if (m_dim == 0 || hidden == 0 || edge_hidden == 0 || graph_layers == 0 ||
      edge_layers == 0) {
    throw ValidationError("model dimensions and depths must be positive");
  }
}

namespace {

GruLayout PlaceGru(std::size_t input, std::size_t hidden, std::size_t& cursor) {
  GruLayout g;
  g.input = input;
  g.hidden = hidden;
  g.w = cursor;
  cursor += 3 * hidden * input;
  g.u = cursor;
  cursor += 3 * hidden * hidden;
  g.b = cursor;
  cursor += 3 * hidden;
  return g;
}

}  // namespace

ParamLayout::ParamLayout(const ModelDims& d) {
  d.Validate();
  std::size_t cursor = 0;
  for (std::size_t l = 0; l < d.graph_layers; ++l) {
    graph_gru.push_back(PlaceGru(l == 0 ? d.m_dim : d.hidden, d.hidden, cursor));
  }
  graph_init = cursor;
  cursor += d.graph_layers * d.hidden;
  sos = cursor;
  cursor += d.m_dim;
  for (std::size_t l = 0; l < d.edge_layers; ++l) {
    proj_w.push_back(cursor);
    cursor += d.edge_hidden * d.hidden;
    proj_b.push_back(cursor);
    cursor += d.edge_hidden;
  }
  for (std::size_t l = 0; l < d.edge_layers; ++l) {
    edge_gru.push_back(PlaceGru(l == 0 ? 1 : d.edge_hidden, d.edge_hidden, cursor));
  }
  out_w = cursor;
  cursor += d.edge_hidden;
  out_b = cursor;
  cursor += 1;
  eos = cursor;
  cursor += d.m_dim;
  total = cursor;
}

std::size_t ParameterCount(const ModelDims& d) {
  const std::size_t M = d.m_dim;
  const std::size_t L = d.hidden;
  const std::size_t E = d.edge_hidden;
  auto gru = [](std::size_t in, std::size_t h) { return 3 * h * (in + h + 1); };
  std::size_t count = gru(M, L) + (d.graph_layers - 1) * gru(L, L);
  count += d.graph_layers * L + M;                     // initial states, SOS
  count += d.edge_layers * (E * L + E);                // projections
  count += gru(1, E) + (d.edge_layers - 1) * gru(E, E);
  count += E + 1 + M;                                  // output head, EOS
  return count;
}

ModelParams::ModelParams(const ModelDims& dims)
    : dims_(dims), layout_(dims), values_(layout_.total, 0.0) {}

ModelParams ModelParams::Initialized(const ModelDims& dims, std::uint64_t seed) {
  ModelParams p(dims);
  Rng rng(seed);
  auto fill = [&](std::size_t offset, std::size_t count, std::size_t fan_in) {
    const double k = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-k, k);
    for (std::size_t i = 0; i < count; ++i) p.values_[offset + i] = dist(rng);
  };
  auto fill_gru = [&](const GruLayout& g) {
    fill(g.w, 3 * g.hidden * g.input, g.input);
    fill(g.u, 3 * g.hidden * g.hidden, g.hidden);
    fill(g.b, 3 * g.hidden, g.hidden);
  };
  const ParamLayout& lay = p.layout_;
  for (const auto& g : lay.graph_gru) fill_gru(g);
  std::fill_n(p.values_.begin() + static_cast<std::ptrdiff_t>(lay.sos), dims.m_dim, 1.0);
  for (std::size_t l = 0; l < dims.edge_layers; ++l) {
    fill(lay.proj_w[l], dims.edge_hidden * dims.hidden, dims.hidden);
    fill(lay.proj_b[l], dims.edge_hidden, dims.hidden);
  }
  for (const auto& g : lay.edge_gru) fill_gru(g);
  fill(lay.out_w, dims.edge_hidden, dims.edge_hidden);
  fill(lay.out_b, 1, dims.edge_hidden);
  return p;
}

void ModelParams::SetZero() { std::fill(values_.begin(), values_.end(), 0.0); }

bool ModelParams::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

std::uint64_t ModelParams::Fingerprint() const {
  Fnv1a64 h;
  h.Update(std::span(reinterpret_cast<const std::uint8_t*>(values_.data()),
                     values_.size() * sizeof(double)));
  return h.digest();
}

struct SlotCache {
  std::vector<GruStep> layers;
  double prob = 0.5;
};

struct StepCache {
  std::vector<GruStep> graph;
  std::vector<Vec> edge_init;
  std::vector<SlotCache> slots;
};

struct ForwardCache {
  std::uint64_t fingerprint = 0;
  std::size_t n_nodes = 0;
  std::size_t m_dim = 0;
  std::vector<StepCache> steps;  // steps[k - 1] predicts row k
};

namespace {

Vec RowAsVector(const std::vector<std::uint8_t>& row) {
  Vec v(static_cast<Eigen::Index>(row.size()));
  for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i];
  return v;
}

Vec EdgeInit(const ModelParams& params, std::size_t layer, const Vec& top) {
  const ModelDims& d = params.dims();
  const double* p = params.values().data();
  ConstMat P(p + params.layout().proj_w[layer], static_cast<Eigen::Index>(d.edge_hidden),
             static_cast<Eigen::Index>(d.hidden));
  ConstVecMap b(p + params.layout().proj_b[layer], static_cast<Eigen::Index>(d.edge_hidden));
  return (P * top + b).array().tanh().matrix();
}

double OutputLogit(const ModelParams& params, const Vec& top) {
  const double* p = params.values().data();
  ConstVecMap w(p + params.layout().out_w, static_cast<Eigen::Index>(params.dims().edge_hidden));
  return w.dot(top) + p[params.layout().out_b];
}

void CheckShape(const ModelParams& params, const EdgeSequence& target) {
  if (target.m_dim != params.dims().m_dim) {
    throw ValidationError("sequence window " + std::to_string(target.m_dim) +
                          " does not match model window " +
                          std::to_string(params.dims().m_dim));
  }
  if (target.rows.size() != target.n_nodes) {
    throw ValidationError("sequence row count does not match node count");
  }
}

}  // namespace

ForwardResult Forward(const ModelParams& params, const EdgeSequence& target) {
  CheckShape(params, target);
  const ModelDims& d = params.dims();
  const ParamLayout& lay = params.layout();
  const double* p = params.values().data();

  auto cache = std::make_shared<ForwardCache>();
  cache->fingerprint = params.Fingerprint();
  cache->n_nodes = target.n_nodes;
  cache->m_dim = target.m_dim;

  ForwardResult result;
  result.probs.resize(target.n_nodes);

  std::vector<Vec> hg(d.graph_layers);
  for (std::size_t l = 0; l < d.graph_layers; ++l) {
    hg[l] = ConstVecMap(p + lay.graph_init + l * d.hidden,
                        static_cast<Eigen::Index>(d.hidden));
  }
  const Vec sos = ConstVecMap(p + lay.sos, static_cast<Eigen::Index>(d.m_dim));

  for (std::size_t k = 1; k < target.n_nodes; ++k) {
    StepCache step;
    Vec x = k == 1 ? sos : RowAsVector(target.rows[k - 1]);
    for (std::size_t l = 0; l < d.graph_layers; ++l) {
      step.graph.push_back(internal::GruForward(p, lay.graph_gru[l], x, hg[l]));
      hg[l] = step.graph.back().h;
      x = hg[l];
    }
    std::vector<Vec> hf(d.edge_layers);
    for (std::size_t l = 0; l < d.edge_layers; ++l) {
      hf[l] = EdgeInit(params, l, hg.back());
      step.edge_init.push_back(hf[l]);
    }
    const std::size_t width = target.window_size(k);
    auto& probs = result.probs[k];
    probs.resize(width);
    double bit = kEdgeStartBit;
    for (std::size_t j = 0; j < width; ++j) {
      SlotCache slot;
      Vec in = Vec::Constant(1, bit);
      for (std::size_t l = 0; l < d.edge_layers; ++l) {
        slot.layers.push_back(internal::GruForward(p, lay.edge_gru[l], in, hf[l]));
        hf[l] = slot.layers.back().h;
        in = hf[l];
      }
      slot.prob = internal::Sigmoid(OutputLogit(params, hf.back()));
      probs[j] = slot.prob;
      step.slots.push_back(std::move(slot));
      bit = target.rows[k][j];
    }
    cache->steps.push_back(std::move(step));
  }
  result.cache = std::move(cache);
  return result;
}

double BceLoss(const std::vector<std::vector<double>>& probs,
               const EdgeSequence& target) {
  if (probs.size() != target.n_nodes) {
    throw ValidationError("probability rows do not match the target");
  }
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 1; k < target.n_nodes; ++k) {
    const std::size_t width = target.window_size(k);
    if (probs[k].size() != width) {
      throw ValidationError("probability row " + std::to_string(k) +
                            " has the wrong width");
    }
    for (std::size_t j = 0; j < width; ++j) {
      const double q = std::clamp(probs[k][j], kProbabilityClamp, 1.0 - kProbabilityClamp);
      total -= target.rows[k][j] ? std::log(q) : std::log1p(-q);
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / static_cast<double>(count);
}

void AccumulateGradients(const ModelParams& params, const ForwardCache& cache,
                         const EdgeSequence& target, double weight,
                         Gradients& grads) {
  CheckShape(params, target);
  if (cache.fingerprint != params.Fingerprint()) {
    throw ValidationError("stale forward cache: parameters changed since Forward");
  }
  if (cache.n_nodes != target.n_nodes || cache.m_dim != target.m_dim) {
    throw ValidationError("forward cache was built for a different sequence");
  }
  if (!(grads.dims() == params.dims())) {
    throw ValidationError("gradient buffer dimensions do not match the model");
  }
  const ModelDims& d = params.dims();
  const ParamLayout& lay = params.layout();
  const double* p = params.values().data();
  double* gp = grads.values().data();
  const auto L = static_cast<Eigen::Index>(d.hidden);
  const auto E = static_cast<Eigen::Index>(d.edge_hidden);

  ConstVecMap out_w(p + lay.out_w, E);
  MutVecMap g_out_w(gp + lay.out_w, E);

  std::vector<Vec> carry_g(d.graph_layers, Vec::Zero(L));
  Vec dx;
  Vec dh_prev;
  for (std::size_t k = target.n_nodes; k-- > 1;) {
    const StepCache& step = cache.steps[k - 1];

    std::vector<Vec> carry_e(d.edge_layers, Vec::Zero(E));
    for (std::size_t j = step.slots.size(); j-- > 0;) {
      const SlotCache& slot = step.slots[j];
      const double prob = slot.prob;
      double dlogit = 0.0;
      if (prob > kProbabilityClamp && prob < 1.0 - kProbabilityClamp) {
        dlogit = weight * (prob - static_cast<double>(target.rows[k][j]));
      }
      const Vec& top = slot.layers.back().h;
      g_out_w += dlogit * top;
      gp[lay.out_b] += dlogit;
      Vec dh = dlogit * out_w + carry_e.back();
      for (std::size_t l = d.edge_layers; l-- > 0;) {
        if (l + 1 < d.edge_layers) dh = dx + carry_e[l];
        internal::GruBackward(p, gp, lay.edge_gru[l], slot.layers[l], dh, dx, dh_prev);
        carry_e[l] = dh_prev;
      }
    }

    const Vec& top_g = step.graph.back().h;
    Vec dtop = Vec::Zero(L);
    for (std::size_t l = 0; l < d.edge_layers; ++l) {
      const Vec dpre = carry_e[l].array() * (1.0 - step.edge_init[l].array().square());
      ConstMat P(p + lay.proj_w[l], E, L);
      MutMat gP(gp + lay.proj_w[l], E, L);
      MutVecMap gb(gp + lay.proj_b[l], E);
      gP.noalias() += dpre * top_g.transpose();
      gb += dpre;
      dtop.noalias() += P.transpose() * dpre;
    }

    Vec dh = dtop + carry_g.back();
    for (std::size_t l = d.graph_layers; l-- > 0;) {
      if (l + 1 < d.graph_layers) dh = dx + carry_g[l];
      internal::GruBackward(p, gp, lay.graph_gru[l], step.graph[l], dh, dx, dh_prev);
      carry_g[l] = dh_prev;
    }
    if (k == 1) {
      MutVecMap g_sos(gp + lay.sos, static_cast<Eigen::Index>(d.m_dim));
      g_sos += dx;
    }
  }
  for (std::size_t l = 0; l < d.graph_layers; ++l) {
    MutVecMap g_init(gp + lay.graph_init + l * d.hidden, L);
    g_init += carry_g[l];
  }
}

Gradients Backward(const ModelParams& params, const ForwardCache& cache,
                   const EdgeSequence& target) {
  Gradients grads(params.dims());
  const std::size_t slots = target.slot_count();
  if (slots == 0) {
    CheckShape(params, target);
    return grads;
  }
  AccumulateGradients(params, cache, target, 1.0 / static_cast<double>(slots), grads);
  return grads;
}

EdgeSequence WithEosRow(const EdgeSequence& seq) {
  EdgeSequence out = seq;
  out.rows.emplace_back(seq.m_dim, 0);
  ++out.n_nodes;
  return out;
}

Sampler::Sampler(const ModelParams& params) : params_(params) { Reset(); }

void Sampler::Reset() {
  const ModelDims& d = params_.dims();
  const double* p = params_.values().data();
  graph_state_.assign(d.graph_layers, {});
  for (std::size_t l = 0; l < d.graph_layers; ++l) {
    const double* base = p + params_.layout().graph_init + l * d.hidden;
    graph_state_[l].assign(base, base + d.hidden);
  }
  edge_state_.assign(d.edge_layers, std::vector<double>(d.edge_hidden, 0.0));
}

void Sampler::AdvanceGraph(std::span<const double> row) {
  const ModelDims& d = params_.dims();
  if (row.size() != d.m_dim) throw ValidationError("input row has the wrong width");
  const double* p = params_.values().data();
  Vec x = Eigen::Map<const Vec>(row.data(), static_cast<Eigen::Index>(row.size()));
  for (std::size_t l = 0; l < d.graph_layers; ++l) {
    const Vec h = Eigen::Map<const Vec>(graph_state_[l].data(),
                                        static_cast<Eigen::Index>(d.hidden));
    x = internal::GruForward(p, params_.layout().graph_gru[l], x, h).h;
    graph_state_[l].assign(x.data(), x.data() + x.size());
  }
  for (std::size_t l = 0; l < d.edge_layers; ++l) {
    const Vec init = EdgeInit(params_, l, x);
    edge_state_[l].assign(init.data(), init.data() + init.size());
  }
}

double Sampler::NextEdgeProbability(double input_bit) {
  const ModelDims& d = params_.dims();
  const double* p = params_.values().data();
  Vec in = Vec::Constant(1, input_bit);
  for (std::size_t l = 0; l < d.edge_layers; ++l) {
    const Vec h = Eigen::Map<const Vec>(edge_state_[l].data(),
                                        static_cast<Eigen::Index>(d.edge_hidden));
    in = internal::GruForward(p, params_.layout().edge_gru[l], in, h).h;
    edge_state_[l].assign(in.data(), in.data() + in.size());
  }
  return internal::Sigmoid(OutputLogit(params_, in));
}

std::span<const double> Sampler::sos() const {
  return params_.values().subspan(params_.layout().sos, params_.dims().m_dim);
}

std::span<const double> Sampler::eos() const {
  return params_.values().subspan(params_.layout().eos, params_.dims().m_dim);
}

}  // namespace topoforge::dggm
