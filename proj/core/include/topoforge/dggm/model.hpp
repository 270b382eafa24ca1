// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "topoforge/dggm/sequence.hpp"

namespace topoforge::dggm {

// M, L and L' plus the depth of each recurrent level.
struct ModelDims {
  std::size_t m_dim = 1;         // window / input width of the graph level
  std::size_t hidden = 64;       // graph-level state
  std::size_t edge_hidden = 32;  // edge-level state
  std::size_t graph_layers = 1;
  std::size_t edge_layers = 1;

  void Validate() const;
  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

struct GruLayout {
  std::size_t input = 0;
  std::size_t hidden = 0;
  std::size_t w = 0;  // (3H x input), rows ordered update, reset, candidate
  std::size_t u = 0;  // (3H x H)
  std::size_t b = 0;  // 3H
};

// Offsets into the flat parameter vector. Tensors are column-major and
// appear in this order:
//
//   graph GRU layers (W, U, b each)    graph-level unit
//   graph initial state, one L-vector per graph layer
//   SOS token (M)
//   projection W (L' x L), b (L') per edge layer   h_g -> initial edge state
//   edge GRU layers (W, U, b each)     edge-level unit, first input width 1
//   output w (L'), output b (1)        logistic edge probability
//   EOS token (M)                      fixed terminator row, never trained
struct ParamLayout {
  ParamLayout() = default;
  explicit ParamLayout(const ModelDims& dims);

  std::vector<GruLayout> graph_gru;
  std::size_t graph_init = 0;
  std::size_t sos = 0;
  std::vector<std::size_t> proj_w;
  std::vector<std::size_t> proj_b;
  std::vector<GruLayout> edge_gru;
  std::size_t out_w = 0;
  std::size_t out_b = 0;
  std::size_t eos = 0;
  std::size_t total = 0;
};

// Closed-form size of the flat parameter vector.
std::size_t ParameterCount(const ModelDims& dims);

class ModelParams {
 public:
  ModelParams() = default;
  // All zeros.
  explicit ModelParams(const ModelDims& dims);

  // Uniform(-k, k) with k = 1/sqrt(fan_in) per tensor; initial states and
  // EOS zero, SOS all ones.
  static ModelParams Initialized(const ModelDims& dims, std::uint64_t seed);

  const ModelDims& dims() const { return dims_; }
  const ParamLayout& layout() const { return layout_; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  void SetZero();
  bool AllFinite() const;
  // FNV-1a over the raw parameter bytes.
  std::uint64_t Fingerprint() const;

  friend bool operator==(const ModelParams& a, const ModelParams& b) {
    return a.dims_ == b.dims_ && a.values_ == b.values_;
  }

 private:
  ModelDims dims_;
  ParamLayout layout_;
  std::vector<double> values_;
};

// Gradients share the parameter layout.
using Gradients = ModelParams;

// Edge input fed to the edge-level unit before the first slot of a row.
inline constexpr double kEdgeStartBit = 1.0;

struct ForwardCache;

// probs[k] has window_size(k) entries (probs[0] is empty).
struct ForwardResult {
  std::vector<std::vector<double>> probs;
  std::shared_ptr<const ForwardCache> cache;
};

// Teacher-forced pass. The graph-level unit reads SOS, then rows 1..N-2;
// after reading its k-th input it seeds the edge-level unit through a tanh
// projection of its top state, and the edge-level unit predicts row k slot
// by slot, consuming the start bit and then the ground-truth previous slot.
// Throws ValidationError if target.m_dim differs from the model's M.
ForwardResult Forward(const ModelParams& params, const EdgeSequence& target);

inline constexpr double kProbabilityClamp = 1e-7;

// Mean over all meaningful slots of -[t log p + (1 - t) log(1 - p)] with p
// clamped to [1e-7, 1 - 1e-7]. 0 for sequences without slots. Throws
// ValidationError on shape mismatch.
double BceLoss(const std::vector<std::vector<double>>& probs,
               const EdgeSequence& target);

// Accumulates weight * d(sum of per-slot BCE)/d(params) into `grads`
// (which must share the model's dims). Throws ValidationError if the cache
// came from different parameters or a different target shape.
void AccumulateGradients(const ModelParams& params, const ForwardCache& cache,
                         const EdgeSequence& target, double weight,
                         Gradients& grads);

// Exact gradient of BceLoss(Forward(params, target).probs, target).
Gradients Backward(const ModelParams& params, const ForwardCache& cache,
                   const EdgeSequence& target);

// Copy of `seq` with one extra all-zero row (the EOS target) appended.
EdgeSequence WithEosRow(const EdgeSequence& seq);

// Step-by-step inference used for free-running generation.
class Sampler {
 public:
  explicit Sampler(const ModelParams& params);

  // Restores the initial graph-level state.
  void Reset();
  // Feeds one M-wide input row (SOS for the first node) to the graph-level
  // unit and seeds the edge-level unit from the new state.
  void AdvanceGraph(std::span<const double> row);
  // Feeds one bit to the edge-level unit and returns the next slot's
  // probability. Pass kEdgeStartBit for the first slot of a row.
  double NextEdgeProbability(double input_bit);

  std::span<const double> sos() const;
  std::span<const double> eos() const;

 private:
  const ModelParams& params_;
  std::vector<std::vector<double>> graph_state_;
  std::vector<std::vector<double>> edge_state_;
};

}  // namespace topoforge::dggm
