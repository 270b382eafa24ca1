// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace topoforge {

// 64-bit FNV-1a. Used for checkpoint trailers and manifest digests; not a
// cryptographic hash.
class Fnv1a64 {
 public:
  void Update(std::span<const std::uint8_t> bytes) {
    for (std::uint8_t b : bytes) {
      state_ ^= b;
      state_ *= 0x100000001b3ULL;
    }
  }
  void Update(std::string_view text) {
    Update(std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                     text.size()));
  }
  std::uint64_t digest() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t HashFile(const std::filesystem::path& path);
std::string ToHex(std::uint64_t value);

}  // namespace topoforge
