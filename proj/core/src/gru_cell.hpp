// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <Eigen/Dense>

#include "topoforge/dggm/model.hpp"

namespace topoforge::dggm::internal {

using Vec = Eigen::VectorXd;
using ConstMat = Eigen::Map<const Eigen::MatrixXd>;
using MutMat = Eigen::Map<Eigen::MatrixXd>;
using ConstVecMap = Eigen::Map<const Eigen::VectorXd>;
using MutVecMap = Eigen::Map<Eigen::VectorXd>;

inline Vec Sigmoid(const Vec& a) {
  return (1.0 + (-a.array()).exp()).inverse().matrix();
}

inline double Sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

// Activations of one GRU step:
//   z = sig(Wz x + Uz h + bz), r = sig(Wr x + Ur h + br)
//   n = tanh(Wn x + Un (r * h) + bn), h' = (1 - z) * n + z * h
struct GruStep {
  Vec x;
  Vec h_prev;
  Vec z;
  Vec r;
  Vec n;
  Vec h;
};

inline GruStep GruForward(const double* p, const GruLayout& g, const Vec& x,
                          const Vec& h_prev) {
  const auto H = static_cast<Eigen::Index>(g.hidden);
  const auto D = static_cast<Eigen::Index>(g.input);
  ConstMat W(p + g.w, 3 * H, D);
  ConstMat U(p + g.u, 3 * H, H);
  ConstVecMap b(p + g.b, 3 * H);
  GruStep s;
  s.x = x;
  s.h_prev = h_prev;
  const Vec a = W * x + b;
  const Vec zr = a.head(2 * H) + U.topRows(2 * H) * h_prev;
  s.z = Sigmoid(Vec(zr.head(H)));
  s.r = Sigmoid(Vec(zr.tail(H)));
  const Vec rh = s.r.cwiseProduct(h_prev);
  s.n = (a.tail(H) + U.bottomRows(H) * rh).array().tanh().matrix();
  s.h = (1.0 - s.z.array()).matrix().cwiseProduct(s.n) + s.z.cwiseProduct(h_prev);
  return s;
}

// Given dL/dh', accumulates parameter gradients into `gp` and returns
// dL/dx and dL/dh_prev.
inline void GruBackward(const double* p, double* gp, const GruLayout& g,
                        const GruStep& s, const Vec& dh, Vec& dx, Vec& dh_prev) {
  const auto H = static_cast<Eigen::Index>(g.hidden);
  const auto D = static_cast<Eigen::Index>(g.input);
  ConstMat W(p + g.w, 3 * H, D);
  ConstMat U(p + g.u, 3 * H, H);
  MutMat gW(gp + g.w, 3 * H, D);
  MutMat gU(gp + g.u, 3 * H, H);
  MutVecMap gb(gp + g.b, 3 * H);

  const Vec dz = dh.cwiseProduct(s.h_prev - s.n);
  const Vec dn = dh.cwiseProduct((1.0 - s.z.array()).matrix());
  dh_prev = dh.cwiseProduct(s.z);

  Vec da(3 * H);
  da.head(H) = dz.array() * s.z.array() * (1.0 - s.z.array());
  da.tail(H) = dn.array() * (1.0 - s.n.array().square());
  const Vec rh = s.r.cwiseProduct(s.h_prev);
  const Vec drh = U.bottomRows(H).transpose() * da.tail(H);
  dh_prev += drh.cwiseProduct(s.r);
  da.segment(H, H) =
      drh.array() * s.h_prev.array() * s.r.array() * (1.0 - s.r.array());

  gW.noalias() += da * s.x.transpose();
  gb += da;
  gU.topRows(2 * H).noalias() += da.head(2 * H) * s.h_prev.transpose();
  gU.bottomRows(H).noalias() += da.tail(H) * rh.transpose();
  dh_prev.noalias() += U.topRows(2 * H).transpose() * da.head(2 * H);
  dx = W.transpose() * da;
}

}  // namespace topoforge::dggm::internal
