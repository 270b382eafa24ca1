// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topoforge/dggm/model.hpp"

namespace topoforge::dggm {

struct AdamConfig {
  double lr = 0.003;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // Global L2 gradient-norm clip; <= 0 disables clipping.
  double grad_clip = 5.0;
};

// First and second moment buffers, congruent with the parameters.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t step = 0;

  AdamState() = default;
  explicit AdamState(std::size_t size) : m(size, 0.0), v(size, 0.0) {}
};

// Scales `grads` in place so that its L2 norm is at most max_norm and
// returns the norm before clipping.
double ClipGradientNorm(std::span<double> grads, double max_norm);

// One bias-corrected Adam update (clip first, then moments, then step).
// `grads` is modified by clipping. Throws ValidationError on size mismatch.
void AdamStep(ModelParams& params, Gradients& grads, AdamState& state,
              const AdamConfig& cfg);

}  // namespace topoforge::dggm
