// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/dggm/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "topoforge/checksum.hpp"
#include "topoforge/error.hpp"

namespace topoforge::dggm {
namespace {

constexpr std::array<char, 8> kMagic{'T', 'O', 'P', 'O', 'F', 'R', 'G', 'M'};

class Writer {
 public:
  void Bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    buf_.insert(buf_.end(), p, p + n);
  }
  template <typename T>
  void Le(T value) {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                                 std::conditional_t<sizeof(T) == 4,
                                                     std::uint32_t,
                                                     std::uint8_t>>;
    U bits = std::bit_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      buf_.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
    }
  }
  void Doubles(std::span<const double> xs) {
    for (double x : xs) Le(x);
  }
  const std::vector<std::uint8_t>& bytes() const { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}
  template <typename T>
  T Le() {
    using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                                 std::conditional_t<sizeof(T) == 4,
                                                     std::uint32_t,
                                                     std::uint8_t>>;
    Need(sizeof(U));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      bits |= static_cast<U>(static_cast<U>(data_[pos_ + i]) << (8 * i));
    }
    pos_ += sizeof(U);
    return std::bit_cast<T>(bits);
  }
  void Doubles(std::span<double> out) {
    Need(out.size() * 8);
    for (double& x : out) x = Le<double>();
  }
  void Skip(std::size_t n) {
    Need(n);
    pos_ += n;
  }
  std::size_t position() const { return pos_; }

 private:
  void Need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw ValidationError("checkpoint truncated");
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace

void SaveCheckpoint(std::ostream& out, const Checkpoint& ckpt) {
  const ModelDims& d = ckpt.params.dims();
  Writer w;
  w.Bytes(kMagic.data(), kMagic.size());
  w.Le(kCheckpointVersion);
  for (std::size_t v : {d.m_dim, d.hidden, d.edge_hidden, d.graph_layers,
                        d.edge_layers}) {
    w.Le(static_cast<std::uint32_t>(v));
  }
  w.Le(static_cast<std::uint32_t>(ckpt.eos_trained ? 1u : 0u));
  w.Le(static_cast<std::uint64_t>(ckpt.params.size()));
  w.Doubles(ckpt.params.values());
  if (ckpt.adam) {
    if (ckpt.adam->m.size() != ckpt.params.size() ||
        ckpt.adam->v.size() != ckpt.params.size()) {
      throw ValidationError("Adam moments do not match the parameter count");
    }
    w.Le(static_cast<std::uint8_t>(1));
    w.Le(ckpt.adam->step);
    w.Doubles(ckpt.adam->m);
    w.Doubles(ckpt.adam->v);
  } else {
    w.Le(static_cast<std::uint8_t>(0));
  }
  Fnv1a64 hash;
  hash.Update(w.bytes());
  w.Le(hash.digest());
  out.write(reinterpret_cast<const char*>(w.bytes().data()),
            static_cast<std::streamsize>(w.bytes().size()));
  if (!out) throw InputError("failed to write checkpoint");
}

void SaveCheckpointFile(const std::filesystem::path& path,
                        const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  SaveCheckpoint(out, ckpt);
}

Checkpoint LoadCheckpoint(std::istream& in) {
  const std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                       std::istreambuf_iterator<char>());
  if (data.size() < kMagic.size() + 8 ||
      std::memcmp(data.data(), kMagic.data(), kMagic.size()) != 0) {
    throw ValidationError("not a topoforge checkpoint (bad magic)");
  }
  const std::size_t body = data.size() - 8;
  Fnv1a64 hash;
  hash.Update(std::span(data.data(), body));
  Reader trailer(std::span(data.data() + body, 8));
  if (trailer.Le<std::uint64_t>() != hash.digest()) {
    throw ValidationError("checkpoint checksum mismatch");
  }

  Reader r(std::span(data.data(), body));
  r.Skip(kMagic.size());
  const auto version = r.Le<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw ValidationError("unsupported checkpoint version " +
                          std::to_string(version));
  }
  ModelDims dims;
  dims.m_dim = r.Le<std::uint32_t>();
  dims.hidden = r.Le<std::uint32_t>();
  dims.edge_hidden = r.Le<std::uint32_t>();
  dims.graph_layers = r.Le<std::uint32_t>();
  dims.edge_layers = r.Le<std::uint32_t>();
  dims.Validate();
  const auto flags = r.Le<std::uint32_t>();

  Checkpoint ckpt{ModelParams(dims), std::nullopt, (flags & 1u) != 0};
  const auto count = r.Le<std::uint64_t>();
  if (count != ckpt.params.size()) {
    throw ValidationError("checkpoint parameter count does not match dims");
  }
  r.Doubles(ckpt.params.values());
  if (r.Le<std::uint8_t>() != 0) {
    AdamState adam(count);
    adam.step = r.Le<std::uint64_t>();
    r.Doubles(adam.m);
    r.Doubles(adam.v);
    ckpt.adam = std::move(adam);
  }
  if (r.position() != body) throw ValidationError("checkpoint has trailing bytes");
  if (!ckpt.params.AllFinite()) {
    throw ValidationError("checkpoint holds non-finite parameters");
  }
  return ckpt;
}

Checkpoint LoadCheckpointFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint " + path.string());
  return LoadCheckpoint(in);
}

}  // namespace topoforge::dggm
