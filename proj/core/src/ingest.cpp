// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "topoforge/ingest.hpp"

#include <charconv>
#include <istream>
#include <set>
#include <sstream>

#include "topoforge/error.hpp"

namespace topoforge::ingest {

namespace {

std::vector<std::string> Tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

bool IsSkippable(const std::vector<std::string>& tokens) {
  return tokens.empty() || tokens.front()[0] == '#';
}

template <typename T>
void Report(Parsed<T>& parsed, ParseMode mode, std::size_t line,
            const std::string& token, const std::string& message) {
  if (mode == ParseMode::kStrict) throw ParseError(line, token, message);
  parsed.skipped.push_back({line, token, message});
}

std::optional<AsNumber> ParseAs(const std::string& token) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  if (value == 0 || value > 0xffffffffULL) return std::nullopt;
  return static_cast<AsNumber>(value);
}

std::optional<double> ParseDouble(const std::string& token) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

Parsed<std::vector<LinkRecord>> ParseLinks(std::istream& in, ParseMode mode) {
  Parsed<std::vector<LinkRecord>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = Tokenize(line);
    if (IsSkippable(tokens)) continue;
    std::size_t pos = 0;
    if (tokens[0] == "link") ++pos;
    if (pos >= tokens.size() || tokens[pos].size() < 2 ||
        tokens[pos].back() != ':') {
      Report(out, mode, line_no, tokens[pos < tokens.size() ? pos : 0],
             "expected '<link_id>:'");
      continue;
    }
    LinkRecord rec;
    rec.link_id = tokens[pos].substr(0, tokens[pos].size() - 1);
    bool ok = true;
    for (++pos; pos < tokens.size(); ++pos) {
      const std::string& member = tokens[pos];
      const auto colon = member.find(':');
      std::string router = member.substr(0, colon);
      if (router.empty()) {
        Report(out, mode, line_no, member, "empty router id");
        ok = false;
        break;
      }
      rec.members.push_back(std::move(router));
      rec.addresses.push_back(colon == std::string::npos ? std::string()
                                                         : member.substr(colon + 1));
    }
    if (!ok) continue;
    if (rec.members.size() < 2) {
      Report(out, mode, line_no, rec.link_id, "link needs at least two members");
      continue;
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

Parsed<std::map<RouterId, AsNumber>> ParseRouterAs(std::istream& in,
                                                   ParseMode mode) {
  Parsed<std::map<RouterId, AsNumber>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = Tokenize(line);
    if (IsSkippable(tokens)) continue;
    std::size_t pos = tokens[0] == "node.AS" ? 1 : 0;
    const std::size_t fields = tokens.size() - pos;
    if (fields < 2 || fields > 3) {
      Report(out, mode, line_no, tokens[pos < tokens.size() ? pos : 0],
             "expected '<router> <asn> [method]'");
      continue;
    }
    RouterId router = tokens[pos];
    if (!router.empty() && router.back() == ':') router.pop_back();
    const auto asn = ParseAs(tokens[pos + 1]);
    if (router.empty() || !asn) {
      Report(out, mode, line_no, tokens[pos + 1], "bad AS number");
      continue;
    }
    auto [it, inserted] = out.records.emplace(router, *asn);
    if (!inserted && it->second != *asn) {
      throw ParseError(line_no, router,
                       "router already assigned to AS " +
                           std::to_string(it->second));
    }
  }
  return out;
}

Parsed<std::map<RouterId, Location>> ParseGeo(std::istream& in,
                                              ParseMode mode) {
  Parsed<std::map<RouterId, Location>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = Tokenize(line);
    if (IsSkippable(tokens)) continue;
    std::size_t pos = tokens[0] == "node.geo" ? 1 : 0;
    if (tokens.size() - pos < 3) {
      Report(out, mode, line_no, tokens[0], "expected '<router> <lat> <lon>'");
      continue;
    }
    RouterId router = tokens[pos];
    if (!router.empty() && router.back() == ':') router.pop_back();
    const auto lat = ParseDouble(tokens[pos + 1]);
    const auto lon = ParseDouble(tokens[pos + 2]);
    if (router.empty() || !lat || !lon || *lat < -90 || *lat > 90 ||
        *lon < -180 || *lon > 180) {
      Report(out, mode, line_no, tokens[pos + (lat ? 2 : 1)], "bad coordinate");
      continue;
    }
    out.records[router] = Location{*lat, *lon};
  }
  return out;
}

std::vector<RouterPair> ExpandLinksToEdges(const std::vector<LinkRecord>& links) {
  std::vector<RouterPair> out;
  for (const LinkRecord& link : links) {
    const auto& m = link.members;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) out.emplace_back(m[i], m[j]);
    }
  }
  return out;
}

namespace {

std::string FormatCoordinate(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

IngestResult BuildIntraAsGraphs(const std::vector<RouterPair>& edges,
                                const std::map<RouterId, AsNumber>& router_as,
                                const std::map<RouterId, Location>* geo) {
  IngestResult result;

  // Router lists per AS come out sorted because router_as is ordered.
  std::map<AsNumber, std::vector<RouterId>> members;
  for (const auto& [router, asn] : router_as) members[asn].push_back(router);
  std::map<RouterId, NodeId> index;
  for (auto& [asn, routers] : members) {
    AsGraph ag;
    ag.as_number = asn;
    ag.graph = Graph(routers.size());
    for (std::size_t i = 0; i < routers.size(); ++i) {
      index[routers[i]] = static_cast<NodeId>(i);
      if (geo) {
        if (auto it = geo->find(routers[i]); it != geo->end()) {
          ag.graph.SetNodeAttribute(static_cast<NodeId>(i), "lat",
                                    FormatCoordinate(it->second.latitude));
          ag.graph.SetNodeAttribute(static_cast<NodeId>(i), "lon",
                                    FormatCoordinate(it->second.longitude));
        }
      }
    }
    ag.routers = std::move(routers);
    result.graphs.emplace(asn, std::move(ag));
  }

  std::set<RouterId> unknown;
  for (const auto& [a, b] : edges) {
    const auto ia = router_as.find(a);
    const auto ib = router_as.find(b);
    if (ia == router_as.end()) unknown.insert(a);
    if (ib == router_as.end()) unknown.insert(b);
    if (ia == router_as.end() || ib == router_as.end()) continue;
    if (a == b) {
      ++result.stats.self_edges;
      continue;
    }
    if (ia->second != ib->second) {
      ++result.stats.inter_as_edges;
      continue;
    }
    Graph& g = result.graphs.at(ia->second).graph;
    if (g.AddEdge(index.at(a), index.at(b))) {
      ++result.stats.intra_as_edges;
    } else {
      ++result.stats.duplicate_edges;
    }
  }
  result.stats.unknown_as_routers = unknown.size();
  return result;
}

}  // namespace topoforge::ingest
