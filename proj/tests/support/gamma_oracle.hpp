// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cmath>
#include <cstddef>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace topoforge::testing {

// Mean of round(m + s * Gamma(a, 1)) conditioned on lying in [lo, hi],
// with each bin mass P(round = k) integrated numerically over the density.
inline double TruncatedRoundedGammaMean(double a, double s, double m,
                                        std::size_t lo, std::size_t hi) {
  const double log_norm = std::log(s) + std::lgamma(a);
  auto density = [&](double x) {
    const double y = (x - m) / s;
    if (y <= 0.0) return 0.0;
    return std::exp((a - 1.0) * std::log(y) - y - log_norm);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  double mass = 0.0;
  double first = 0.0;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double left = std::max(static_cast<double>(k) - 0.5, m);
    const double right = static_cast<double>(k) + 0.5;
    if (right <= left) continue;
    const double p = integrator.integrate(density, left, right);
    mass += p;
    first += p * static_cast<double>(k);
  }
  return first / mass;
}

}  // namespace topoforge::testing
