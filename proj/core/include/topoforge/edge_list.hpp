// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "topoforge/graph.hpp"

namespace topoforge {

// Plain-text edge list:
//
//   %nodes 5        optional header fixing the node count
//   # comment       ignored
//   0 1             one undirected edge per line, 0-based ids
//
// Without a `%nodes` header the node count is 1 + the largest id seen.
// Repeated edges collapse; self-edges and negative or non-numeric ids
// raise ParseError.
Graph ReadEdgeList(std::istream& in);
Graph ReadEdgeListFile(const std::filesystem::path& path);

// Always writes the `%nodes` header followed by edges in sorted order, so
// output is canonical for a given graph.
void WriteEdgeList(std::ostream& out, const Graph& g);
void WriteEdgeListFile(const std::filesystem::path& path, const Graph& g);

}  // namespace topoforge
