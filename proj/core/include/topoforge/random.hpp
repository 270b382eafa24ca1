// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <random>

namespace topoforge {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent, reproducible streams.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for sub-stream `index` of `seed` (per repetition, per run, ...).
constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t index) {
  return Mix64(Mix64(seed) ^ Mix64(index + 0x632be59bd9b4e019ULL));
}

inline Rng MakeRng(std::uint64_t seed, std::uint64_t index) {
  return Rng(DeriveSeed(seed, index));
}

// Uniform draw in the open interval (0, 1).
inline double UniformOpen01(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double x = unit(rng);
  while (x <= 0.0) x = unit(rng);
  return x;
}

// Uniform integer in [0, n). `n` must be positive.
inline std::size_t UniformIndex(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace topoforge
