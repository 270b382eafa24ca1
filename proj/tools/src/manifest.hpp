// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace topoforge::cli {

// Graph files of a corpus: the file itself, or the *.edges files of a
// directory in name order. Throws InputError if none exist.
std::vector<std::filesystem::path> ListGraphFiles(const std::filesystem::path& p);

// FNV-1a over (name, file digest) pairs in order.
std::uint64_t CorpusDigest(const std::vector<std::filesystem::path>& files);

// One manifest.json per output directory. Paths are recorded by file name
// only so reruns in other directories produce the same bytes.
class Manifest {
 public:
  explicit Manifest(std::string stage);

  void Seed(const std::string& name, std::uint64_t value);
  void InputFile(const std::string& role, const std::filesystem::path& file);
  void InputCorpus(const std::string& role,
                   const std::vector<std::filesystem::path>& files);
  void Output(const std::filesystem::path& file);
  void Counter(const std::string& name, nlohmann::json value);
  nlohmann::json& config() { return doc_["config"]; }

  // Writes dir/manifest.json.
  void Write(const std::filesystem::path& dir);

 private:
  nlohmann::ordered_json Render() const;
  nlohmann::json doc_;
  std::string stage_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

// UTC ISO-8601 time, or SOURCE_DATE_EPOCH when set.
std::string Timestamp();

}  // namespace topoforge::cli
