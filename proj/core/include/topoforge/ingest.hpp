// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topoforge/graph.hpp"

namespace topoforge::ingest {

// Input grammar (whitespace separated, `#` starts a comment line):
//
//   links:      [link] <link_id>: <router>[:<address>] <router>[:<address>] ...
//   router-AS:  [node.AS] <router> <asn> [<method>]
//   geo:        [node.geo] <router>[:] <latitude> <longitude> [...]
//
// The optional leading keywords and the trailing AS-inference method match
// CAIDA ITDK `.links`, `.nodes.as` and `.nodes.geo` lines, so those files
// only need their header comments stripped to be accepted.

using RouterId = std::string;
using AsNumber = std::uint32_t;

struct Location {
  double latitude = 0.0;
  double longitude = 0.0;
};

struct RouterRecord {
  RouterId router_id;
  AsNumber as_number = 0;
  std::optional<Location> location;
};

struct LinkRecord {
  std::string link_id;
  std::vector<RouterId> members;
  // Parallel to members; empty strings where no address was given.
  std::vector<std::string> addresses;
};

enum class ParseMode { kStrict, kSkip };

struct ParseIssue {
  std::size_t line = 0;
  std::string token;
  std::string message;
};

template <typename T>
struct Parsed {
  T records;
  std::vector<ParseIssue> skipped;  // only populated in kSkip mode
};

Parsed<std::vector<LinkRecord>> ParseLinks(std::istream& in,
                                           ParseMode mode = ParseMode::kStrict);

// Repeating a router with the same AS is accepted; a conflicting AS is a
// ValidationError in either mode.
Parsed<std::map<RouterId, AsNumber>> ParseRouterAs(
    std::istream& in, ParseMode mode = ParseMode::kStrict);

Parsed<std::map<RouterId, Location>> ParseGeo(
    std::istream& in, ParseMode mode = ParseMode::kStrict);

using RouterPair = std::pair<RouterId, RouterId>;

// Every k-member link yields its C(k, 2) unordered member pairs, in member
// order. Pairs are not deduplicated here.
std::vector<RouterPair> ExpandLinksToEdges(const std::vector<LinkRecord>& links);

struct AsGraph {
  AsNumber as_number = 0;
  Graph graph;
  // Dense index -> router token; routers are indexed in sorted token order.
  std::vector<RouterId> routers;
};

struct IngestStats {
  std::size_t unknown_as_routers = 0;  // distinct routers without an AS
  std::size_t self_edges = 0;
  std::size_t duplicate_edges = 0;
  std::size_t inter_as_edges = 0;
  std::size_t intra_as_edges = 0;
};

struct IngestResult {
  std::map<AsNumber, AsGraph> graphs;
  IngestStats stats;
};

// One simple graph per AS over every router assigned to it (including
// routers without intra-AS edges). Only edges whose two endpoints belong to
// the same AS are kept; duplicates collapse and self-edges are dropped.
// Locations become "lat"/"lon" node attributes.
IngestResult BuildIntraAsGraphs(const std::vector<RouterPair>& edges,
                                const std::map<RouterId, AsNumber>& router_as,
                                const std::map<RouterId, Location>* geo = nullptr);

}  // namespace topoforge::ingest
