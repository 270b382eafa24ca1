// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The topoforge Authors

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "manifest.hpp"
#include "topoforge/baselines.hpp"
#include "topoforge/checksum.hpp"
#include "topoforge/cli/cli.hpp"
#include "topoforge/community.hpp"
#include "topoforge/dggm/checkpoint.hpp"
#include "topoforge/dggm/sequence.hpp"
#include "topoforge/dggm/train.hpp"
#include "topoforge/edge_list.hpp"
#include "topoforge/error.hpp"
#include "topoforge/eval.hpp"
#include "topoforge/ingest.hpp"
#include "topoforge/metrics.hpp"
#include "topoforge/random.hpp"
#include "topoforge/synth.hpp"

namespace topoforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream OpenInput(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  return in;
}

std::string GraphFileName(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "g%06zu.edges", i);
  return buf;
}

// Removes graph files left by an earlier run so reruns are idempotent.
void PrepareGraphDir(const fs::path& dir) {
  fs::create_directories(dir);
  static const std::regex kOwned(R"(g\d{6}\.edges)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() &&
        std::regex_match(entry.path().filename().string(), kOwned)) {
      fs::remove(entry.path());
    }
  }
}

struct Corpus {
  std::vector<fs::path> files;
  std::vector<Graph> graphs;
};

Corpus LoadCorpus(const fs::path& p) {
  Corpus c;
  c.files = ListGraphFiles(p);
  c.graphs.reserve(c.files.size());
  for (const auto& f : c.files) c.graphs.push_back(ReadEdgeListFile(f));
  return c;
}

template <typename T>
std::vector<T> SplitList(const std::string& text, char sep = ',') {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (item.empty()) continue;
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) {
      throw ValidationError("bad list element '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

json SizeSummary(const std::vector<Graph>& graphs) {
  if (graphs.empty()) return json::object();
  std::size_t lo = std::numeric_limits<std::size_t>::max();
  std::size_t hi = 0;
  double total = 0.0;
  for (const Graph& g : graphs) {
    lo = std::min(lo, g.node_count());
    hi = std::max(hi, g.node_count());
    total += static_cast<double>(g.node_count());
  }
  return {{"min_nodes", lo},
          {"max_nodes", hi},
          {"mean_nodes", total / static_cast<double>(graphs.size())}};
}

// ---------------------------------------------------------------- ingest

struct IngestOptions {
  std::string links;
  std::string router_as;
  std::string geo;
  std::string out;
  bool strict = false;
  std::size_t min_nodes = 1;
};

void RunIngest(const IngestOptions& o, Streams& io) {
  const auto mode = o.strict ? ingest::ParseMode::kStrict : ingest::ParseMode::kSkip;
  auto links_in = OpenInput(o.links);
  auto as_in = OpenInput(o.router_as);
  const auto links = ingest::ParseLinks(links_in, mode);
  const auto router_as = ingest::ParseRouterAs(as_in, mode);
  std::optional<ingest::Parsed<std::map<ingest::RouterId, ingest::Location>>> geo;
  if (!o.geo.empty()) {
    auto geo_in = OpenInput(o.geo);
    geo = ingest::ParseGeo(geo_in, mode);
  }
  const auto edges = ingest::ExpandLinksToEdges(links.records);
  const auto result = ingest::BuildIntraAsGraphs(edges, router_as.records,
                                                 geo ? &geo->records : nullptr);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  Manifest manifest("ingest");
  manifest.InputFile("links", o.links);
  manifest.InputFile("router_as", o.router_as);
  if (geo) manifest.InputFile("geo", o.geo);

  std::size_t written = 0;
  std::size_t below_min = 0;
  for (const auto& [asn, as_graph] : result.graphs) {
    if (as_graph.graph.node_count() < o.min_nodes) {
      ++below_min;
      continue;
    }
    const std::string stem = "as" + std::to_string(asn);
    WriteEdgeListFile(dir / (stem + ".edges"), as_graph.graph);
    {
      std::ofstream routers(dir / (stem + ".routers"), std::ios::trunc);
      for (const auto& r : as_graph.routers) routers << r << '\n';
    }
    manifest.Output(dir / (stem + ".edges"));
    manifest.Output(dir / (stem + ".routers"));
    ++written;
  }
  for (const auto& [file, issues] :
       {std::pair{std::string("links"), &links.skipped},
        std::pair{std::string("router_as"), &router_as.skipped}}) {
    for (const auto& issue : *issues) {
      io.err << "warning: " << file << " line " << issue.line << ": "
             << issue.message << '\n';
    }
  }
  manifest.Counter("as_graphs", written);
  manifest.Counter("as_below_min_nodes", below_min);
  manifest.Counter("link_records", links.records.size());
  manifest.Counter("skipped_link_lines", links.skipped.size());
  manifest.Counter("skipped_router_as_lines", router_as.skipped.size());
  manifest.Counter("skipped_geo_lines", geo ? geo->skipped.size() : 0);
  manifest.Counter("unknown_as_routers", result.stats.unknown_as_routers);
  manifest.Counter("self_edges", result.stats.self_edges);
  manifest.Counter("duplicate_edges", result.stats.duplicate_edges);
  manifest.Counter("inter_as_edges", result.stats.inter_as_edges);
  manifest.Counter("intra_as_edges", result.stats.intra_as_edges);
  manifest.config() = {{"strict", o.strict}, {"min_nodes", o.min_nodes},
                       {"geo", !o.geo.empty()}};
  manifest.Write(dir);
  io.out << "ingest: " << written << " AS graphs written to " << dir.string()
         << '\n';
}

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  std::string in;
  std::string out;
  std::size_t n_min = 12;
  std::size_t n_max = 250;
  std::uint64_t seed = 0;
};

void RunExtract(const ExtractOptions& o, Streams& io) {
  const Corpus corpus = LoadCorpus(o.in);
  const fs::path dir(o.out);
  PrepareGraphDir(dir);

  Manifest manifest("extract");
  manifest.InputCorpus("graphs", corpus.files);
  manifest.Seed("frm", o.seed);

  community::FrmStats total;
  std::size_t written = 0;
  std::ofstream index(dir / "index.csv", std::ios::trunc);
  index << "graph,source,nodes,edges,path\n";
  for (std::size_t i = 0; i < corpus.graphs.size(); ++i) {
    community::FrmConfig cfg{o.n_min, o.n_max, DeriveSeed(o.seed, i)};
    const auto res = community::FrmExtract(corpus.graphs[i], cfg);
    total.multilevel_calls += res.stats.multilevel_calls;
    total.unsplittable += res.stats.unsplittable;
    total.too_small += res.stats.too_small;
    total.single_star += res.stats.single_star;
    total.max_depth = std::max(total.max_depth, res.stats.max_depth);
    for (const auto& eg : res.graphs) {
      const std::string name = GraphFileName(written++);
      WriteEdgeListFile(dir / name, eg.graph);
      manifest.Output(dir / name);
      std::string path;
      for (std::size_t k = 0; k < eg.path.size(); ++k) {
        path += (k ? "/" : "") + std::to_string(eg.path[k]);
      }
      index << name << ',' << corpus.files[i].filename().string() << ','
            << eg.graph.node_count() << ',' << eg.graph.edge_count() << ','
            << path << '\n';
    }
  }
  index.close();
  manifest.Output(dir / "index.csv");
  manifest.Counter("graphs_written", written);
  manifest.Counter("multilevel_calls", total.multilevel_calls);
  manifest.Counter("unsplittable", total.unsplittable);
  manifest.Counter("too_small", total.too_small);
  manifest.Counter("single_star", total.single_star);
  manifest.Counter("max_depth", total.max_depth);
  manifest.config() = {{"n_min", o.n_min}, {"n_max", o.n_max}};
  manifest.Write(dir);
  io.out << "extract: " << written << " graphs from " << corpus.graphs.size()
         << " inputs\n";
}

// ---------------------------------------------------------------- train

struct TrainOptions {
  std::string in;
  std::string val_in;
  std::string out;
  std::string resume;
  dggm::TrainConfig cfg;
  std::string decay_epochs = "300,400";
  std::size_t m_dim = 0;
  double m_quantile = 1.0;
  std::size_t hidden = 64;
  std::size_t edge_hidden = 0;
  std::size_t graph_layers = 1;
  std::size_t edge_layers = 1;
  std::size_t val_samples = 100;
  std::size_t val_reps = 10;
  bool quiet = false;
};

void RunTrain(TrainOptions o, Streams& io) {
  o.cfg.decay_epochs = SplitList<std::size_t>(o.decay_epochs);
  const Corpus corpus = LoadCorpus(o.in);
  std::vector<Graph> graphs;
  std::size_t disconnected = 0;
  for (const Graph& g : corpus.graphs) {
    if (g.node_count() > 0 && IsConnected(g)) {
      graphs.push_back(g);
    } else {
      ++disconnected;
    }
  }
  if (graphs.empty()) throw ValidationError("no connected training graphs");
  if (disconnected > 0) {
    io.err << "warning: skipped " << disconnected << " disconnected graphs\n";
  }

  dggm::ModelParams start;
  dggm::AdamState adam;
  if (!o.resume.empty()) {
    auto ckpt = dggm::LoadCheckpointFile(o.resume);
    start = std::move(ckpt.params);
    if (ckpt.adam) adam = std::move(*ckpt.adam);
  } else {
    dggm::ModelDims dims;
    dims.hidden = o.hidden;
    dims.edge_hidden = o.edge_hidden ? o.edge_hidden : std::max<std::size_t>(1, o.hidden / 2);
    dims.graph_layers = o.graph_layers;
    dims.edge_layers = o.edge_layers;
    dims.m_dim = o.m_dim;
    if (dims.m_dim == 0) {
      Rng rng = MakeRng(o.cfg.rng_seed, 3);
      dims.m_dim = dggm::EstimateTransientDim(graphs, o.m_quantile, rng);
    }
    dims.Validate();
    start = dggm::ModelParams::Initialized(dims, DeriveSeed(o.cfg.rng_seed, 0));
  }
  const dggm::ModelDims dims = start.dims();

  dggm::ValidationFn validate;
  std::vector<Graph> val_graphs;
  if (!o.val_in.empty()) {
    for (Graph& g : LoadCorpus(o.val_in).graphs) {
      if (g.node_count() > 0) val_graphs.push_back(std::move(g));
    }
    if (val_graphs.empty()) throw ValidationError("validation corpus is empty");
    const auto [lo, hi] = std::minmax_element(
        val_graphs.begin(), val_graphs.end(), [](const Graph& a, const Graph& b) {
          return a.node_count() < b.node_count();
        });
    SynthConfig sc;
    sc.count = o.val_samples;
    sc.n_min = lo->node_count();
    sc.n_max = hi->node_count();
    sc.max_attempts = 50 * o.val_samples;
    sc.rng_seed = DeriveSeed(o.cfg.rng_seed, 4);
    BootstrapConfig bc;
    bc.sample_size = o.val_samples;
    bc.repetitions = o.val_reps;
    bc.rng_seed = DeriveSeed(o.cfg.rng_seed, 5);
    validate = [sc, bc, &val_graphs](const dggm::ModelParams& p) {
      try {
        const auto synth = Synthesize(p, sc);
        return BootstrapMmd(val_graphs, synth.graphs, MetricKind::kDegree, bc).mean;
      } catch (const BudgetExhausted&) {
        return std::numeric_limits<double>::infinity();
      }
    };
  }

  dggm::EpochFn on_epoch;
  if (!o.quiet) {
    on_epoch = [&io](const dggm::EpochRecord& r) {
      io.out << "epoch " << r.epoch << " loss " << r.mean_loss << " lr " << r.lr;
      if (r.val_mmd_degree) io.out << " val_mmd_degree " << *r.val_mmd_degree;
      io.out << '\n';
    };
  }
  auto result = dggm::Train(graphs, o.cfg, std::move(start), std::move(adam),
                            validate, on_epoch);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  dggm::SaveCheckpointFile(dir / "last.ckpt",
                           {result.params, result.adam, o.cfg.append_eos});
  const bool use_best = result.best.has_value();
  dggm::SaveCheckpointFile(
      dir / "model.ckpt",
      {use_best ? *result.best : result.params,
       use_best ? std::nullopt : std::optional<dggm::AdamState>(result.adam),
       o.cfg.append_eos});
  {
    std::ofstream hist(dir / "history.csv", std::ios::trunc);
    dggm::WriteHistoryCsv(hist, result.history);
  }

  Manifest manifest("train");
  manifest.InputCorpus("graphs", corpus.files);
  if (!o.val_in.empty()) manifest.InputCorpus("validation", ListGraphFiles(o.val_in));
  if (!o.resume.empty()) manifest.InputFile("resume", o.resume);
  manifest.Seed("train", o.cfg.rng_seed);
  for (const char* f : {"model.ckpt", "last.ckpt", "history.csv"}) {
    manifest.Output(dir / f);
  }
  manifest.Counter("training_graphs", graphs.size());
  manifest.Counter("skipped_disconnected", disconnected);
  manifest.Counter("parameters", result.params.size());
  manifest.Counter("adam_steps", result.adam.step);
  manifest.Counter("final_mean_loss", result.history.back().mean_loss);
  manifest.Counter("first_mean_loss", result.history.front().mean_loss);
  manifest.Counter("selected_epoch",
                   use_best ? result.best_epoch : result.history.back().epoch);
  manifest.config() = {
      {"epochs", o.cfg.epochs},
      {"batch_size", o.cfg.batch_size},
      {"lr", o.cfg.lr},
      {"lr_decay", o.cfg.lr_decay},
      {"decay_epochs", o.cfg.decay_epochs},
      {"beta1", o.cfg.beta1},
      {"beta2", o.cfg.beta2},
      {"eps", o.cfg.eps},
      {"grad_clip", o.cfg.grad_clip},
      {"append_eos", o.cfg.append_eos},
      {"val_interval", o.cfg.val_interval},
      {"val_samples", o.val_samples},
      {"val_reps", o.val_reps},
      {"m_dim", dims.m_dim},
      {"m_quantile", o.m_quantile},
      {"hidden", dims.hidden},
      {"edge_hidden", dims.edge_hidden},
      {"graph_layers", dims.graph_layers},
      {"edge_layers", dims.edge_layers}};
  manifest.Write(dir);
  io.out << "train: " << result.history.size() << " epochs, final loss "
         << result.history.back().mean_loss << ", M = " << dims.m_dim << '\n';
}

// ---------------------------------------------------------------- generate

std::pair<std::size_t, std::size_t> ParseRange(const std::string& text) {
  static const std::regex kRange(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, kRange)) {
    throw ValidationError("size range must look like 12..250, got '" + text + "'");
  }
  return {std::stoull(m[1]), std::stoull(m[2])};
}

std::set<std::size_t> ReadSizeList(const fs::path& p) {
  auto in = OpenInput(p);
  std::set<std::size_t> sizes;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size()) throw ValidationError("bad size '" + tok + "' in " + p.string());
    sizes.insert(v);
  }
  return sizes;
}

struct GenerateOptions {
  std::string model;
  std::string out;
  std::string sizes = "12..250";
  std::string size_list;
  std::string tau = "per-node";
  std::size_t count = 1;
  std::size_t max_attempts = 10000;
  std::size_t length = 0;
  bool stop_at_eos = false;
  std::uint64_t seed = 0;
};

void RunGenerate(const GenerateOptions& o, Streams& io) {
  const auto ckpt = dggm::LoadCheckpointFile(o.model);
  SynthConfig cfg;
  cfg.count = o.count;
  if (!o.size_list.empty()) {
    cfg.allowed_sizes = ReadSizeList(o.size_list);
  } else {
    std::tie(cfg.n_min, cfg.n_max) = ParseRange(o.sizes);
  }
  cfg.tau_policy = ParseTauPolicy(o.tau);
  cfg.max_attempts = o.max_attempts;
  cfg.generation_length = o.length;
  cfg.stop_at_eos = o.stop_at_eos;
  cfg.rng_seed = o.seed;
  const SynthResult res = Synthesize(ckpt.params, cfg);

  const fs::path dir(o.out);
  PrepareGraphDir(dir);
  Manifest manifest("generate");
  manifest.InputFile("model", o.model);
  if (!o.size_list.empty()) manifest.InputFile("size_list", o.size_list);
  manifest.Seed("synth", o.seed);
  std::ofstream index(dir / "index.csv", std::ios::trunc);
  index << "graph,run_index,nodes,edges\n";
  for (std::size_t i = 0; i < res.graphs.size(); ++i) {
    const std::string name = GraphFileName(i);
    WriteEdgeListFile(dir / name, res.graphs[i]);
    manifest.Output(dir / name);
    index << name << ',' << res.run_index[i] << ',' << res.graphs[i].node_count()
          << ',' << res.graphs[i].edge_count() << '\n';
  }
  index.close();
  manifest.Output(dir / "index.csv");
  const SynthStats& s = res.stats;
  manifest.Counter("graphs_written", res.graphs.size());
  manifest.Counter("free_runs", s.runs);
  manifest.Counter("components_examined", s.components_examined);
  manifest.Counter("accepted", s.accepted);
  manifest.Counter("acceptance_rate", s.acceptance_rate());
  manifest.Counter("eos_stops", s.eos_stops);
  manifest.Counter("tau", {{"draws", s.tau_draws},
                           {"min", s.tau_min},
                           {"max", s.tau_max},
                           {"mean", s.tau_mean}});
  manifest.config() = {{"count", o.count},
                       {"tau", std::string(ToString(cfg.tau_policy))},
                       {"max_attempts", o.max_attempts},
                       {"generation_length", cfg.RunLength()},
                       {"stop_at_eos", o.stop_at_eos}};
  if (cfg.allowed_sizes) {
    manifest.config()["sizes"] = *cfg.allowed_sizes;
  } else {
    manifest.config()["sizes"] = {cfg.n_min, cfg.n_max};
  }
  manifest.Write(dir);
  io.out << "generate: " << res.graphs.size() << " graphs from " << s.runs
         << " runs (acceptance " << s.acceptance_rate() << ")\n";
}

// ---------------------------------------------------------------- baselines

struct BaselineOptions {
  std::string kind = "ba";
  std::string out;
  std::string gamma = "0.852,59.64,11.99";
  std::string fit_from;
  std::size_t count = 1;
  std::size_t n_min = 12;
  std::size_t n_max = 250;
  std::uint64_t seed = 0;
  baselines::BaselineConfig cfg;
  std::string fitness = "uniform";
};

void RunGenerateBaseline(BaselineOptions o, Streams& io) {
  o.cfg.kind = baselines::ParseBaselineKind(o.kind);
  if (o.fitness == "uniform") {
    o.cfg.bb_fitness = {baselines::FitnessSpec::Kind::kUniform, 1.0};
  } else {
    const auto v = SplitList<double>(o.fitness);
    if (v.size() != 1) throw ValidationError("--fitness is 'uniform' or a constant");
    o.cfg.bb_fitness = {baselines::FitnessSpec::Kind::kConstant, v[0]};
  }
  o.cfg.Validate();
  if (o.n_min >= o.n_max) throw ValidationError("need --min < --max");

  baselines::GammaParams gamma;
  std::vector<fs::path> fit_files;
  if (!o.fit_from.empty()) {
    const Corpus c = LoadCorpus(o.fit_from);
    fit_files = c.files;
    std::vector<double> sizes;
    for (const Graph& g : c.graphs) sizes.push_back(static_cast<double>(g.node_count()));
    gamma = baselines::FitGammaMle(sizes);
  } else {
    const auto v = SplitList<double>(o.gamma);
    if (v.size() != 3) throw ValidationError("--gamma expects a,s,m");
    gamma = {v[0], v[1], v[2]};
  }

  const fs::path dir(o.out);
  PrepareGraphDir(dir);
  Manifest manifest("generate-baseline");
  if (!fit_files.empty()) manifest.InputCorpus("fit_from", fit_files);
  manifest.Seed("baseline", o.seed);
  std::ofstream index(dir / "index.csv", std::ios::trunc);
  index << "graph,seed,nodes,edges\n";
  const std::uint64_t size_seed = DeriveSeed(o.seed, 0);
  const std::uint64_t graph_seed = DeriveSeed(o.seed, 1);
  for (std::size_t i = 0; i < o.count; ++i) {
    Rng size_rng = MakeRng(size_seed, i);
    const std::size_t n = baselines::SampleNodeCount(gamma, o.n_min, o.n_max, size_rng);
    baselines::BaselineConfig cfg = o.cfg;
    cfg.rng_seed = DeriveSeed(graph_seed, i);
    const Graph g = baselines::Generate(n, cfg);
    const std::string name = GraphFileName(i);
    WriteEdgeListFile(dir / name, g);
    manifest.Output(dir / name);
    index << name << ',' << cfg.rng_seed << ',' << g.node_count() << ','
          << g.edge_count() << '\n';
  }
  index.close();
  manifest.Output(dir / "index.csv");
  manifest.Counter("graphs_written", o.count);
  manifest.config() = {
      {"kind", std::string(baselines::ToString(o.cfg.kind))},
      {"count", o.count},
      {"min", o.n_min},
      {"max", o.n_max},
      {"gamma", {{"shape", gamma.shape}, {"scale", gamma.scale}, {"location", gamma.location}}},
      {"gamma_fitted", !o.fit_from.empty()},
      {"m_links", o.cfg.m_links},
      {"eba", {o.cfg.eba_p_ba, o.cfg.eba_p_add, o.cfg.eba_p_rewire}},
      {"dba_p_single", o.cfg.dba_p_single},
      {"fitness", o.fitness}};
  manifest.Write(dir);
  io.out << "generate-baseline: " << o.count << ' ' << o.kind << " graphs\n";
}

// ---------------------------------------------------------------- eval

struct EvalOptions {
  std::string real;
  std::string synth;
  std::string metrics = "degree,clustering,betweenness,assortativity";
  std::string out = "report.json";
  std::size_t samples = 500;
  std::size_t reps = 100;
  std::optional<double> sigma;
  std::string estimator = "biased";
  std::uint64_t seed = 0;
};

void RunEval(const EvalOptions& o, Streams& io) {
  const Corpus real = LoadCorpus(o.real);
  const Corpus synth = LoadCorpus(o.synth);
  MmdEstimator estimator;
  if (o.estimator == "biased" || o.estimator == "v") {
    estimator = MmdEstimator::kBiased;
  } else if (o.estimator == "unbiased" || o.estimator == "u") {
    estimator = MmdEstimator::kUnbiased;
  } else {
    throw ValidationError("--estimator is 'biased' or 'unbiased'");
  }
  std::vector<MetricKind> kinds;
  for (const auto& name : SplitList<std::string>(o.metrics)) {
    kinds.push_back(ParseMetricKind(name));
  }
  if (kinds.empty()) throw ValidationError("no metrics requested");

  const fs::path report_path(o.out);
  const fs::path dir = report_path.has_parent_path() ? report_path.parent_path()
                                                     : fs::path(".");
  fs::create_directories(dir);
  Manifest manifest("eval");
  manifest.InputCorpus("real", real.files);
  manifest.InputCorpus("synth", synth.files);
  manifest.Seed("bootstrap", o.seed);

  nlohmann::ordered_json report;
  report["tool_version"] = Version();
  report["statistic"] = "mmd_squared";
  report["spread"] = "sample standard deviation over bootstrap repetitions";
  report["metrics"] = nlohmann::ordered_json::object();
  for (MetricKind kind : kinds) {
    const std::string name(ToString(kind));
    const DistributionSet r = CollectDistributions(real.graphs, kind);
    const DistributionSet s = CollectDistributions(synth.graphs, kind);
    if (r.dists.empty() || s.dists.empty()) {
      io.err << "warning: " << name << " undefined on every "
             << (r.dists.empty() ? "real" : "synthetic") << " graph; skipped\n";
      report["metrics"][name] = {{"skipped", true},
                                 {"real_dropped", r.dropped},
                                 {"synth_dropped", s.dropped}};
      continue;
    }
    BootstrapConfig bc;
    bc.sample_size = o.samples;
    bc.repetitions = o.reps;
    bc.sigma = o.sigma;
    bc.rng_seed = DeriveSeed(o.seed, static_cast<std::uint64_t>(kind));
    bc.estimator = estimator;
    MmdReport rep = BootstrapMmd(r.dists, s.dists, bc);
    rep.kind = kind;
    const std::string hist = "histogram_" + name + ".csv";
    {
      std::ofstream h(dir / hist, std::ios::trunc);
      WriteHistogramCsv(h, r.dists, s.dists);
    }
    manifest.Output(dir / hist);
    report["metrics"][name] = {
        {"mmd_squared_mean", rep.mean},
        {"mmd_squared_stddev", rep.stddev},
        {"stddev_degenerate", rep.stddev_degenerate},
        {"point_estimates", rep.point_estimates},
        {"protocol",
         {{"sample_size", rep.sample_size},
          {"repetitions", rep.repetitions},
          {"sigma", rep.sigma},
          {"sigma_source", o.sigma ? "given" : "median heuristic"},
          {"estimator", estimator == MmdEstimator::kBiased ? "biased" : "unbiased"}}},
        {"real_graphs", rep.real_used},
        {"synth_graphs", rep.synth_used},
        {"real_dropped", r.dropped},
        {"synth_dropped", s.dropped},
        {"histogram", hist}};
    io.out << name << ": " << rep.mean << " +- " << rep.stddev << '\n';
  }
  {
    std::ofstream f(report_path, std::ios::trunc);
    if (!f) throw InputError("cannot write " + report_path.string());
    f << report.dump(2) << '\n';
  }
  manifest.Output(report_path);
  manifest.config() = {{"metrics", o.metrics},
                       {"samples", o.samples},
                       {"reps", o.reps},
                       {"estimator", o.estimator}};
  if (o.sigma) manifest.config()["sigma"] = *o.sigma;
  manifest.Counter("real_graphs", real.graphs.size());
  manifest.Counter("synth_graphs", synth.graphs.size());
  manifest.Write(dir);
}

// ---------------------------------------------------------------- metrics

struct MetricsOptions {
  std::string in;
  std::string out;
};

void RunMetrics(const MetricsOptions& o, Streams& io) {
  const Corpus corpus = LoadCorpus(o.in);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  std::ofstream csv(dir / "metrics.csv", std::ios::trunc);
  csv << "graph,n,avg_degree,assortativity,global_clustering,betweenness_ratio\n";
  csv.precision(17);
  std::size_t undefined_assortativity = 0;
  auto put = [&csv](const ScalarMetric& m) {
    if (m.defined()) csv << *m.value;
  };
  for (std::size_t i = 0; i < corpus.graphs.size(); ++i) {
    const Graph& g = corpus.graphs[i];
    const ScalarMetric r = Assortativity(g);
    if (!r.defined()) ++undefined_assortativity;
    csv << corpus.files[i].stem().string() << ',' << g.node_count() << ',';
    put(AverageDegree(g));
    csv << ',';
    put(r);
    csv << ',';
    put(GlobalClustering(g));
    csv << ',';
    put(BetweennessRatio(g));
    csv << '\n';
  }
  csv.close();
  Manifest manifest("metrics");
  manifest.InputCorpus("graphs", corpus.files);
  manifest.Output(dir / "metrics.csv");
  manifest.Counter("graphs", corpus.graphs.size());
  manifest.Counter("undefined_assortativity", undefined_assortativity);
  manifest.Write(dir);
  io.out << "metrics: " << corpus.graphs.size() << " graphs\n";
}

}  // namespace

void AddIngest(CLI::App& app, Streams& io) {
  auto o = std::make_shared<IngestOptions>();
  auto* sub = app.add_subcommand("ingest", "Split router-level links into per-AS graphs");
  sub->add_option("--links", o->links, "Link records file")->required();
  sub->add_option("--router-as", o->router_as, "Router-to-AS table")->required();
  sub->add_option("--geo", o->geo, "Router geolocation table");
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_flag("--strict", o->strict, "Fail on the first malformed line");
  sub->add_option("--min-nodes", o->min_nodes, "Skip AS graphs smaller than this")
      ->capture_default_str();
  sub->callback([o, &io] { RunIngest(*o, io); });
}

void AddExtract(CLI::App& app, Streams& io) {
  auto o = std::make_shared<ExtractOptions>();
  auto* sub = app.add_subcommand("extract", "FRM community extraction");
  sub->add_option("--in", o->in, "Edge-list file or directory")->required();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_option("--n-min", o->n_min, "Exclusive lower size bound")->capture_default_str();
  sub->add_option("--n-max", o->n_max, "Inclusive upper size bound")->capture_default_str();
  sub->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
  sub->callback([o, &io] { RunExtract(*o, io); });
}

void AddTrain(CLI::App& app, Streams& io) {
  auto o = std::make_shared<TrainOptions>();
  auto* sub = app.add_subcommand("train", "Train the sequential generative model");
  sub->add_option("--in", o->in, "Training corpus directory")->required();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_option("--val-in", o->val_in, "Validation corpus for model selection");
  sub->add_option("--resume", o->resume, "Continue from a checkpoint");
  sub->add_option("--epochs", o->cfg.epochs)->capture_default_str();
  sub->add_option("--batch", o->cfg.batch_size)->capture_default_str();
  sub->add_option("--lr", o->cfg.lr)->capture_default_str();
  sub->add_option("--lr-decay", o->cfg.lr_decay)->capture_default_str();
  sub->add_option("--decay-epochs", o->decay_epochs, "Comma-separated epochs")
      ->capture_default_str();
  sub->add_option("--beta1", o->cfg.beta1)->capture_default_str();
  sub->add_option("--beta2", o->cfg.beta2)->capture_default_str();
  sub->add_option("--eps", o->cfg.eps)->capture_default_str();
  sub->add_option("--grad-clip", o->cfg.grad_clip)->capture_default_str();
  sub->add_option("--seed", o->cfg.rng_seed)->capture_default_str();
  sub->add_flag("--eos", o->cfg.append_eos, "Train an all-zero stop row");
  sub->add_option("--val-interval", o->cfg.val_interval)->capture_default_str();
  sub->add_option("--val-samples", o->val_samples)->capture_default_str();
  sub->add_option("--val-reps", o->val_reps)->capture_default_str();
  sub->add_option("--m", o->m_dim, "Transient dimension; 0 estimates it")
      ->capture_default_str();
  sub->add_option("--m-quantile", o->m_quantile)->capture_default_str();
  sub->add_option("--hidden", o->hidden, "Graph-level state size L")->capture_default_str();
  sub->add_option("--edge-hidden", o->edge_hidden, "Edge-level state size; 0 means L/2")
      ->capture_default_str();
  sub->add_option("--graph-layers", o->graph_layers)->capture_default_str();
  sub->add_option("--edge-layers", o->edge_layers)->capture_default_str();
  sub->add_flag("--quiet", o->quiet, "No per-epoch progress");
  sub->callback([o, &io] { RunTrain(*o, io); });
}

void AddGenerate(CLI::App& app, Streams& io) {
  auto o = std::make_shared<GenerateOptions>();
  auto* sub = app.add_subcommand("generate", "Sample graphs from a trained model");
  sub->add_option("--model", o->model, "Checkpoint file")->required();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_option("--count", o->count, "Number of graphs T")->capture_default_str();
  auto* sizes = sub->add_option("--sizes", o->sizes, "Accepted sizes A..B")
                    ->capture_default_str();
  sub->add_option("--size-list", o->size_list, "File of accepted sizes")->excludes(sizes);
  sub->add_option("--tau", o->tau, "per-node or per-graph")->capture_default_str();
  sub->add_option("--max-attempts", o->max_attempts)->capture_default_str();
  sub->add_option("--length", o->length, "Nodes per free run; 0 uses the largest size")
      ->capture_default_str();
  sub->add_flag("--stop-at-eos", o->stop_at_eos, "End runs at an all-zero row");
  sub->add_option("--seed", o->seed)->capture_default_str();
  sub->callback([o, &io] { RunGenerate(*o, io); });
}

void AddGenerateBaseline(CLI::App& app, Streams& io) {
  auto o = std::make_shared<BaselineOptions>();
  auto* sub = app.add_subcommand("generate-baseline", "Preferential-attachment baselines");
  sub->add_option("--kind", o->kind, "ba, eba, dba or bb")->capture_default_str();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->add_option("--count", o->count)->capture_default_str();
  sub->add_option("--min", o->n_min)->capture_default_str();
  sub->add_option("--max", o->n_max)->capture_default_str();
  auto* gamma = sub->add_option("--gamma", o->gamma, "Node-count gamma a,s,m")
                    ->capture_default_str();
  sub->add_option("--fit-from", o->fit_from, "Fit the gamma to this corpus")->excludes(gamma);
  sub->add_option("--seed", o->seed)->capture_default_str();
  sub->add_option("--m-links", o->cfg.m_links)->capture_default_str();
  sub->add_option("--eba-p-ba", o->cfg.eba_p_ba)->capture_default_str();
  sub->add_option("--eba-p-add", o->cfg.eba_p_add)->capture_default_str();
  sub->add_option("--eba-p-rewire", o->cfg.eba_p_rewire)->capture_default_str();
  sub->add_option("--dba-p-single", o->cfg.dba_p_single)->capture_default_str();
  sub->add_option("--fitness", o->fitness, "BB fitness: uniform or a constant")
      ->capture_default_str();
  sub->callback([o, &io] { RunGenerateBaseline(*o, io); });
}

void AddEval(CLI::App& app, Streams& io) {
  auto o = std::make_shared<EvalOptions>();
  auto* sub = app.add_subcommand("eval", "Bootstrap MMD between two corpora");
  sub->add_option("--real", o->real, "Reference corpus")->required();
  sub->add_option("--synth", o->synth, "Compared corpus")->required();
  sub->add_option("--metrics", o->metrics)->capture_default_str();
  sub->add_option("--samples", o->samples)->capture_default_str();
  sub->add_option("--reps", o->reps)->capture_default_str();
  sub->add_option("--sigma", o->sigma, "Kernel width; median heuristic if unset");
  sub->add_option("--estimator", o->estimator, "biased or unbiased")->capture_default_str();
  sub->add_option("--seed", o->seed)->capture_default_str();
  sub->add_option("--out", o->out, "Report JSON path")->capture_default_str();
  sub->callback([o, &io] { RunEval(*o, io); });
}

void AddMetrics(CLI::App& app, Streams& io) {
  auto o = std::make_shared<MetricsOptions>();
  auto* sub = app.add_subcommand("metrics", "Per-graph scalar metrics as CSV");
  sub->add_option("--in", o->in, "Edge-list file or directory")->required();
  sub->add_option("--out", o->out, "Output directory")->required();
  sub->callback([o, &io] { RunMetrics(*o, io); });
}

}  // namespace topoforge::cli
