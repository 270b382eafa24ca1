// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "topoforge/dggm/model.hpp"
#include "topoforge/dggm/optim.hpp"

namespace topoforge::dggm {

// Binary layout, all integers little-endian:
//
//   "TOPOFRGM"                        8-byte magic
//   u32 version                       kCheckpointVersion
//   u32 M, L, L', graph_layers, edge_layers
//   u32 flags                         bit 0: trained with an EOS row
//   u64 parameter count
//   f64 x count                       parameters in ParamLayout order
//   u8  has_moments
//   [u64 step, f64 x count m, f64 x count v]   when has_moments
//   u64 FNV-1a of every preceding byte
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  ModelParams params;
  std::optional<AdamState> adam;
  bool eos_trained = false;
};

void SaveCheckpoint(std::ostream& out, const Checkpoint& ckpt);
void SaveCheckpointFile(const std::filesystem::path& path,
                        const Checkpoint& ckpt);

// Throws ValidationError on bad magic, version, dims, size or checksum.
Checkpoint LoadCheckpoint(std::istream& in);
// Also throws InputError when the file cannot be opened.
Checkpoint LoadCheckpointFile(const std::filesystem::path& path);

}  // namespace topoforge::dggm
