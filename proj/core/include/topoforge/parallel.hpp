// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstddef>
#include <functional>

namespace topoforge {

// Worker cap: TOPOFORGE_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t WorkerCount();

// Runs body(i) for i in [0, n) over up to WorkerCount() threads. Each index
// runs exactly once; callers write results into per-index slots and reduce
// afterwards in index order, which keeps results independent of the
// thread count.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace topoforge
