// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "manifest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>

#include "topoforge/checksum.hpp"
#include "topoforge/cli/cli.hpp"
#include "topoforge/error.hpp"

namespace topoforge::cli {

namespace fs = std::filesystem;

std::vector<fs::path> ListGraphFiles(const fs::path& p) {
  std::error_code ec;
  if (fs::is_regular_file(p, ec)) return {p};
  if (!fs::is_directory(p, ec)) {
    throw InputError("no such file or directory: " + p.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(p)) {
    if (entry.is_regular_file() && entry.path().extension() == ".edges") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw InputError("no .edges files in " + p.string());
  std::sort(files.begin(), files.end());
  return files;
}

std::uint64_t CorpusDigest(const std::vector<fs::path>& files) {
  Fnv1a64 h;
  for (const auto& f : files) {
    h.Update(f.filename().string());
    h.Update(ToHex(HashFile(f)));
  }
  return h.digest();
}

Manifest::Manifest(std::string stage) : stage_(std::move(stage)) {
  doc_["seeds"] = nlohmann::json::object();
  doc_["inputs"] = nlohmann::json::object();
  doc_["counters"] = nlohmann::json::object();
  doc_["config"] = nlohmann::json::object();
}

void Manifest::Seed(const std::string& name, std::uint64_t value) {
  doc_["seeds"][name] = value;
}

void Manifest::InputFile(const std::string& role, const fs::path& file) {
  doc_["inputs"][role] = {{"name", file.filename().string()},
                          {"fnv1a64", ToHex(HashFile(file))}};
}

void Manifest::InputCorpus(const std::string& role,
                           const std::vector<fs::path>& files) {
  doc_["inputs"][role] = {{"files", files.size()},
                          {"fnv1a64", ToHex(CorpusDigest(files))}};
}

void Manifest::Output(const fs::path& file) {
  outputs_.emplace_back(file.filename().string(), ToHex(HashFile(file)));
}

void Manifest::Counter(const std::string& name, nlohmann::json value) {
  doc_["counters"][name] = std::move(value);
}

nlohmann::ordered_json Manifest::Render() const {
  nlohmann::ordered_json out;
  out["stage"] = stage_;
  out["tool_version"] = Version();
  out["created_at"] = Timestamp();
  out["seeds"] = doc_["seeds"];
  out["inputs"] = doc_["inputs"];
  auto outputs = nlohmann::ordered_json::array();
  auto sorted = outputs_;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& [name, digest] : sorted) {
    outputs.push_back({{"name", name}, {"fnv1a64", digest}});
  }
  out["outputs"] = std::move(outputs);
  out["counters"] = doc_["counters"];
  out["config"] = doc_["config"];
  return out;
}

void Manifest::Write(const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream f(dir / "manifest.json", std::ios::trunc);
  if (!f) throw InputError("cannot write " + (dir / "manifest.json").string());
  f << Render().dump(2) << '\n';
}

std::string Timestamp() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace topoforge::cli
