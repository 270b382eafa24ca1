// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "topoforge/error.hpp"

namespace topoforge {

namespace {

std::optional<std::uint64_t> ParseIndex(const std::string& token) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

Graph ReadEdgeList(std::istream& in) {
  std::optional<std::uint64_t> declared;
  std::vector<Edge> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first) || first[0] == '#') continue;
    if (first == "%nodes") {
      std::string count;
      if (!(fields >> count)) throw ParseError(line_no, "", "missing node count");
      declared = ParseIndex(count);
      if (!declared) throw ParseError(line_no, count, "bad node count");
      continue;
    }
    std::string second;
    if (!(fields >> second)) {
      throw ParseError(line_no, first, "expected two node ids");
    }
    const auto u = ParseIndex(first);
    if (!u) throw ParseError(line_no, first, "bad node id");
    const auto v = ParseIndex(second);
    if (!v) throw ParseError(line_no, second, "bad node id");
    if (*u == *v) throw ParseError(line_no, first, "self-edge");
    std::string extra;
    if (fields >> extra && extra[0] != '#') {
      throw ParseError(line_no, extra, "trailing token");
    }
    max_id = std::max({max_id, *u, *v});
    any = true;
    edges.emplace_back(static_cast<NodeId>(*u), static_cast<NodeId>(*v));
  }
  const std::uint64_t n = declared ? *declared : (any ? max_id + 1 : 0);
  if (any && max_id >= n) {
    throw ValidationError("edge endpoint " + std::to_string(max_id) +
                          " exceeds declared node count " + std::to_string(n));
  }
  return Graph::FromEdges(n, edges);
}

Graph ReadEdgeListFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return ReadEdgeList(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.token(), path.string() + ": " + e.what());
  }
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  out << "%nodes " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void WriteEdgeListFile(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  WriteEdgeList(out, g);
}

}  // namespace topoforge
