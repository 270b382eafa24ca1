// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include <sstream>

#include "doctest.h"
#include "topoforge/error.hpp"
#include "topoforge/ingest.hpp"

using namespace topoforge;
using namespace topoforge::ingest;

TEST_CASE("link lines expand to member pairs") {
  std::istringstream in("link L7: N1:1.2.3.4 N2 N3:5.6.7.8\n# comment\n\nL8: N4 N5\n");
  const auto links = ParseLinks(in);
  REQUIRE(links.records.size() == 2);
  CHECK(links.records[0].link_id == "L7");
  CHECK(links.records[0].members == std::vector<RouterId>{"N1", "N2", "N3"});
  CHECK(links.records[0].addresses[0] == "1.2.3.4");
  CHECK(links.records[0].addresses[1].empty());
  const auto pairs = ExpandLinksToEdges(links.records);
  CHECK(pairs.size() == 4);  // C(3,2) + 1
  CHECK(pairs[0] == RouterPair{"N1", "N2"});
}

TEST_CASE("malformed link lines: strict throws, skip records") {
  const std::string text = "link L1: N1 N2\nlink L2 N3 N4\nlink L3: N5\n";
  std::istringstream strict(text);
  try {
    ParseLinks(strict, ParseMode::kStrict);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.token() == "L2");
  }
  std::istringstream lenient(text);
  const auto parsed = ParseLinks(lenient, ParseMode::kSkip);
  CHECK(parsed.records.size() == 1);
  REQUIRE(parsed.skipped.size() == 2);
  CHECK(parsed.skipped[0].line == 2);
  CHECK(parsed.skipped[1].line == 3);
}

TEST_CASE("router-to-AS table") {
  std::istringstream in("node.AS N1 100 refinement\nN2 200\nnode.AS N1 100 lasthop\n");
  const auto parsed = ParseRouterAs(in);
  CHECK(parsed.records.size() == 2);
  CHECK(parsed.records.at("N2") == 200);

  std::istringstream conflict("N1 100\nN1 300\n");
  CHECK_THROWS_AS(ParseRouterAs(conflict, ParseMode::kSkip), ParseError);
  std::istringstream bad("N1 abc\n");
  CHECK_THROWS_AS(ParseRouterAs(bad), ParseError);
  std::istringstream zero("N1 0\n");
  CHECK_THROWS_AS(ParseRouterAs(zero), ParseError);
}

TEST_CASE("geo table validates coordinates") {
  std::istringstream in("node.geo N1: 48.5 2.25\nnode.geo N2: 95 0\n");
  const auto parsed = ParseGeo(in, ParseMode::kSkip);
  CHECK(parsed.records.size() == 1);
  CHECK(parsed.records.at("N1").latitude == 48.5);
  CHECK(parsed.skipped.size() == 1);
}

TEST_CASE("intra-AS split keeps isolated routers and counts edge classes") {
  std::istringstream links_in(
      "L1: A B\nL2: B C\nL3: C X\nL4: A B\nL5: B Q\nL6: D E\n");
  std::istringstream as_in("A 1\nB 1\nC 1\nF 1\nX 2\nD 3\nE 3\n");
  std::istringstream geo_in("A 10 20\n");
  const auto links = ParseLinks(links_in);
  const auto as = ParseRouterAs(as_in);
  const auto geo = ParseGeo(geo_in);
  const auto res = BuildIntraAsGraphs(ExpandLinksToEdges(links.records),
                                      as.records, &geo.records);
  REQUIRE(res.graphs.size() == 3);
  const AsGraph& a1 = res.graphs.at(1);
  CHECK(a1.routers == std::vector<RouterId>{"A", "B", "C", "F"});
  CHECK(a1.graph.node_count() == 4);
  CHECK(a1.graph.edge_count() == 2);
  CHECK(a1.graph.degree(3) == 0);
  REQUIRE(a1.graph.node_attributes(0) != nullptr);
  CHECK(a1.graph.node_attributes(0)->at("lat") == "10");
  CHECK(res.graphs.at(2).graph.edge_count() == 0);
  CHECK(res.stats.inter_as_edges == 1);
  CHECK(res.stats.duplicate_edges == 1);
  CHECK(res.stats.unknown_as_routers == 1);
  CHECK(res.stats.intra_as_edges == 3);
}
