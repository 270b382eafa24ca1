// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/checksum.hpp"

#include <array>
#include <fstream>

#include "topoforge/error.hpp"

namespace topoforge {

std::uint64_t HashFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  Fnv1a64 h;
  std::array<char, 1 << 14> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = static_cast<std::size_t>(in.gcount());
    h.Update(std::span(reinterpret_cast<const std::uint8_t*>(buf.data()), got));
  }
  return h.digest();
}

std::string ToHex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace topoforge
