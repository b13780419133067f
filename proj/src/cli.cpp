// Copyright 2026 The DTIM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dtim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "dtim/diffusion.hpp"
#include "dtim/errors.hpp"
#include "dtim/example2.hpp"
#include "dtim/format.hpp"
#include "dtim/graph.hpp"
#include "dtim/greedy.hpp"
#include "dtim/lurker_rank.hpp"
#include "dtim/metrics.hpp"
#include "dtim/parallel.hpp"
#include "dtim/ris.hpp"
#include "dtim/simulator.hpp"

#ifndef DTIM_VERSION
#define DTIM_VERSION "0.0.0"
#endif

namespace dtim::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string HexHash(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

// Collects inputs and outputs of one subcommand run and writes the manifest.
class RunContext {
 public:
  RunContext(std::string subcommand, std::string out_dir)
      : subcommand_(std::move(subcommand)),
        out_dir_(std::move(out_dir)),
        start_(std::chrono::steady_clock::now()) {}

  std::string Input(const std::string& path) {
    std::string text = ReadFile(path);
    inputs_[path] = HexHash(Fnv1a64(text));
    return text;
  }

  void Output(const std::string& name, const std::string& content) {
    if (out_dir_.empty()) return;
    fs::create_directories(out_dir_);
    std::ofstream f(fs::path(out_dir_) / name, std::ios::binary);
    if (!f) throw Error("cannot write '" + name + "'");
    f << content;
    outputs_[name] = HexHash(Fnv1a64(content));
  }

  void Note(const std::string& key, json value) { notes_[key] = value; }

  void Finish(const json& params) {
    if (out_dir_.empty()) return;
    const double seconds = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
    json m;
    m["subcommand"] = subcommand_;
    m["parameters"] = params;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    m["version"] = DTIM_VERSION;
    m["duration_seconds"] = seconds;
    if (!notes_.empty()) m["notes"] = notes_;
    fs::create_directories(out_dir_);
    std::ofstream f(fs::path(out_dir_) / "manifest.json");
    f << m.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  std::string out_dir_;
  std::chrono::steady_clock::time_point start_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
  json notes_ = json::object();
};

template <typename Fn>
std::string Render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

struct Options {
  std::string out_dir;
  std::string input;
  std::string diffusion;
  int threads = 0;
  // LurkerRank and weights
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
  std::optional<double> epsilon_r;
  // targets
  std::optional<double> L;
  double L_perc = 25.0;
  // selection
  int k = 10;
  double alpha = 0.5;
  double eta = 1e-4;
  std::string variant = "global";
  // simulation
  std::string seeds_file;
  std::size_t runs = 10000;
  std::uint64_t rng_seed = 0;
  // ris
  double epsilon = 0.1;
  double ell = 1.0;
  std::optional<std::uint64_t> theta;
  std::uint64_t max_theta = 2'000'000;
  std::string cache;
  // sweep / overlap
  std::vector<double> alphas{0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                             0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<int> ks{10};
  std::vector<std::string> seed_files;
  std::string graph_file;
};

DiffusionGraph LoadDiffusion(RunContext& ctx, const std::string& path) {
  std::istringstream in(ctx.Input(path));
  return ReadDiffusionGraph(in);
}

SocialGraph LoadGraph(RunContext& ctx, const std::string& path,
                      std::ostream& out) {
  std::istringstream in(ctx.Input(path));
  EdgeListLoad load = LoadEdgeList(in);
  if (load.duplicates_dropped + load.self_loops_dropped > 0) {
    out << "warning: dropped " << load.duplicates_dropped
        << " duplicate edges and " << load.self_loops_dropped
        << " self-loops\n";
  }
  return std::move(load.graph);
}

TargetSet Targets(const DiffusionGraph& dg, const Options& o) {
  return SelectTargets(dg.node_weights(),
                       o.L ? TargetRule::Absolute(*o.L)
                           : TargetRule::Percentile(o.L_perc));
}

RankOptions Ranking(const Options& o) {
  return {o.damping, o.tolerance, o.max_iterations};
}

// Accepts "rank id DIC C D" seed files as well as one id per line.
std::vector<NodeId> ReadSeeds(RunContext& ctx, const std::string& path,
                              const SocialGraph& g) {
  std::istringstream in(ctx.Input(path));
  std::vector<NodeId> seeds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string p; fields >> p;) parts.push_back(p);
    if (parts.empty()) continue;
    const std::string& token = parts.size() >= 5 ? parts[1] : parts[0];
    std::uint64_t id = 0;
    try {
      std::size_t used = 0;
      id = std::stoull(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad seed id '" + token + "'");
    }
    if (g.node_count() == 0) {
      seeds.push_back(static_cast<NodeId>(id));
      continue;
    }
    auto v = g.find_node(id);
    if (!v) throw DomainError("seed " + token + " is not a graph node");
    seeds.push_back(*v);
  }
  return seeds;
}

std::string JoinIds(const SocialGraph& g, std::span<const NodeId> ids) {
  std::string s;
  for (NodeId v : ids) {
    if (!s.empty()) s += ',';
    s += std::to_string(g.original_id(v));
  }
  return s;
}

int CmdIngest(const Options& o, RunContext& ctx, std::ostream& out) {
  SocialGraph g = LoadGraph(ctx, o.input, out);
  const CentralityStats stats = ComputeCentrality(g);
  ctx.Output("graph.txt", SerializeEdgeList(g));
  ctx.Output("centrality.tsv", Render([&](std::ostream& s) {
               s << "id\toutdegree\tbetweenness\tcoreness\n";
               for (NodeId v = 0; v < g.node_count(); ++v) {
                 s << g.original_id(v) << '\t' << stats.outdegree[v] << '\t'
                   << FormatDouble(stats.betweenness[v]) << '\t'
                   << stats.coreness[v] << '\n';
               }
             }));
  out << "nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  return 0;
}

std::string RankText(const SocialGraph& g, const RankVector& r) {
  return Render([&](std::ostream& s) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      s << g.original_id(v) << ' ' << FormatDouble(r.scores[v]) << '\n';
    }
  });
}

int CmdRank(const Options& o, RunContext& ctx, std::ostream& out) {
  SocialGraph g = LoadGraph(ctx, o.input, out);
  RankVector r = LurkerRank(g, Ranking(o));
  ctx.Output("ranks.txt", RankText(g, r));
  ctx.Note("iterations", r.iterations_used);
  out << "converged in " << r.iterations_used << " iterations (residual "
      << FormatDouble(r.residual) << ")\n";
  return 0;
}

int CmdWeight(const Options& o, RunContext& ctx, std::ostream& out) {
  SocialGraph g = LoadGraph(ctx, o.input, out);
  DiffusionBuild build =
      BuildDiffusionGraph(g, Ranking(o), NodeWeightOptions{o.epsilon_r});
  ctx.Output("ranks.txt", RankText(g, build.ranks));
  ctx.Output("diffusion.txt", Render([&](std::ostream& s) {
               WriteDiffusionGraph(build.diffusion, s);
             }));
  ctx.Note("epsilon_r_used", build.weights.epsilon_r);
  ctx.Note("rank_scale", build.weights.scale);
  if (build.weights.degenerate) {
    out << "warning: all ranks equal, every node weight is zero\n";
  }
  out << "nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  return 0;
}

int CmdTargets(const Options& o, RunContext& ctx, std::ostream& out) {
  DiffusionGraph dg = LoadDiffusion(ctx, o.diffusion);
  TargetSet ts = Targets(dg, o);
  ctx.Output("targets.txt", Render([&](std::ostream& s) {
               for (NodeId t : ts.members()) {
                 s << dg.graph().original_id(t) << ' '
                   << FormatDouble(dg.node_weight(t)) << '\n';
               }
             }));
  ctx.Note("threshold_used", ts.threshold_used());
  out << "targets " << ts.size() << " threshold "
      << FormatDouble(ts.threshold_used()) << '\n';
  return 0;
}

int CmdSelect(const Options& o, RunContext& ctx, std::ostream& out) {
  DiffusionGraph dg = LoadDiffusion(ctx, o.diffusion);
  TargetSet ts = Targets(dg, o);
  SelectionConfig config{o.k, o.alpha, o.eta, ParseDiversityVariant(o.variant),
                         ResolveThreads(o.threads)};
  DtimSelector selector(dg, ts, config);
  SeedResult result = selector.Run();
  const std::string text = Render(
      [&](std::ostream& s) { WriteSeedResult(result, dg.graph(), s); });
  ctx.Output("seeds.txt", text);
  ctx.Output("diversity.txt", Render([&](std::ostream& s) {
               selector.diversity_table().Write(dg.graph(), s);
             }));
  ctx.Note("status", ToString(result.status));
  ctx.Note("graph_hash", HexHash(DiffusionHash(dg)));
  out << text;
  if (result.status != SelectionStatus::kComplete) {
    out << "stopped early: " << ToString(result.status) << '\n';
  }
  return 0;
}

int CmdRisSelect(const Options& o, RunContext& ctx, std::ostream& out) {
  DiffusionGraph dg = LoadDiffusion(ctx, o.diffusion);
  TargetSet ts = Targets(dg, o);
  RisConfig config;
  config.k = o.k;
  config.alpha = o.alpha;
  config.variant = ParseRisVariant(o.variant);
  config.rng_seed = o.rng_seed;
  config.kpt.epsilon = o.epsilon;
  config.kpt.ell = o.ell;
  config.kpt.max_theta = o.max_theta;
  config.kpt.threads = ResolveThreads(o.threads);
  config.theta_override = o.theta;

  RisOutcome outcome;
  const std::uint64_t hash = DiffusionHash(dg);
  if (!o.cache.empty() && fs::exists(o.cache)) {
    std::istringstream in(ctx.Input(o.cache));
    PoolCacheHeader header;
    auto pool = ReadPoolCache(in, dg, ts, &header);
    outcome = RisSelectOnPool(dg, ts, std::move(pool), config);
    ctx.Note("pool_source", "cache");
  } else {
    outcome = RisSelect(dg, ts, config);
    ctx.Note("pool_source", "sampled");
    if (!o.cache.empty()) {
      fs::path parent = fs::path(o.cache).parent_path();
      if (!parent.empty()) fs::create_directories(parent);
      std::ofstream f(o.cache, std::ios::binary);
      if (!f) throw Error("cannot write cache '" + o.cache + "'");
      WritePoolCache(f, outcome.pool,
                     {hash, outcome.pool.size(), o.rng_seed});
    }
  }
  const std::string text = Render([&](std::ostream& s) {
    WriteSeedResult(outcome.result, dg.graph(), s);
  });
  ctx.Output("seeds.txt", text);
  ctx.Output("kpt.txt", Render([&](std::ostream& s) {
               s << "kpt " << FormatDouble(outcome.kpt.kpt) << '\n'
                 << "refined_kpt " << FormatDouble(outcome.kpt.refined_kpt)
                 << '\n'
                 << "lambda " << FormatDouble(outcome.kpt.lambda) << '\n'
                 << "epsilon " << FormatDouble(outcome.kpt.epsilon) << '\n'
                 << "theta " << outcome.kpt.theta << '\n';
             }));
  ctx.Note("graph_hash", HexHash(hash));
  ctx.Note("theta", outcome.pool.size());
  ctx.Note("status", ToString(outcome.result.status));
  out << text;
  return 0;
}

int CmdSimulate(const Options& o, RunContext& ctx, std::ostream& out) {
  DiffusionGraph dg = LoadDiffusion(ctx, o.diffusion);
  TargetSet ts = Targets(dg, o);
  auto seeds = ReadSeeds(ctx, o.seeds_file, dg.graph());
  SimulationReport report = EstimateCapital(
      dg, seeds, ts, {o.runs, o.rng_seed, ResolveThreads(o.threads)});
  const std::string summary = Render([&](std::ostream& s) {
    s << "capital " << FormatDouble(report.capital_estimate) << '\n'
      << "std_error " << FormatDouble(report.capital_std_error) << '\n'
      << "runs " << report.runs << '\n'
      << "rng_seed " << report.rng_seed << '\n'
      << "seeds " << JoinIds(dg.graph(), seeds) << '\n';
  });
  ctx.Output("simulation.txt", summary);
  ctx.Output("activation.txt", Render([&](std::ostream& s) {
               WriteActivationProbabilities(report, dg.graph(), s);
             }));
  out << summary;
  return 0;
}

int CmdSweep(const Options& o, RunContext& ctx, std::ostream& out) {
  DiffusionGraph dg = LoadDiffusion(ctx, o.diffusion);
  TargetSet ts = Targets(dg, o);
  SweepConfig config;
  config.alphas = o.alphas;
  config.ks = o.ks;
  config.selection = {0, 0.0, o.eta, ParseDiversityVariant(o.variant),
                      ResolveThreads(o.threads)};
  config.simulation = {o.runs, o.rng_seed, ResolveThreads(o.threads)};
  SweepResult result = Sweep(dg, ts, config);
  const std::string table = Render(
      [&](std::ostream& s) { WriteSweepTable(result, config, dg.graph(), s); });
  ctx.Output("sweep.tsv", table);
  ctx.Output("overlap.tsv", Render([&](std::ostream& s) {
               for (int k : config.ks) {
                 s << "# k=" << k << '\n';
                 WriteOverlapMatrix(SweepOverlap(result, k), s);
               }
             }));
  ctx.Output("activation_histogram.tsv", Render([&](std::ostream& s) {
               WriteSweepHistogram(result, config, s);
             }));
  std::vector<double> alphas, capital;
  for (const auto& cell : result.cells) {
    alphas.push_back(cell.alpha);
    capital.push_back(cell.simulation.capital_estimate);
  }
  if (config.alphas.size() >= 2) {
    try {
      ctx.Note("spearman_alpha_capital", SpearmanCorrelation(alphas, capital));
    } catch (const DomainError&) {
      ctx.Note("spearman_alpha_capital", nullptr);
    }
  }
  out << table;
  return 0;
}

int CmdOverlap(const Options& o, RunContext& ctx, std::ostream& out) {
  SocialGraph g;
  if (!o.graph_file.empty()) g = LoadGraph(ctx, o.graph_file, out);
  std::vector<std::vector<NodeId>> sets;
  for (const auto& f : o.seed_files) {
    auto s = ReadSeeds(ctx, f, g);
    if (static_cast<int>(s.size()) > o.k) s.resize(o.k);
    sets.push_back(std::move(s));
  }
  const OverlapMatrix m = ComputeOverlapMatrix(sets, o.seed_files);
  const std::string text =
      Render([&](std::ostream& s) { WriteOverlapMatrix(m, s); });
  ctx.Output("overlap.tsv", text);
  out << text;
  if (g.node_count() > 0) {
    const CentralityStats stats = ComputeCentrality(g);
    ctx.Output("centrality_cv.tsv", Render([&](std::ostream& s) {
                 s << "seeds\toutdegree_cv\tbetweenness_cv\tcoreness_cv\n";
                 auto cv = [](std::vector<double> v) -> std::string {
                   try {
                     return FormatDouble(CoefficientOfVariation(v));
                   } catch (const DomainError&) {
                     return "nan";
                   }
                 };
                 for (std::size_t i = 0; i < sets.size(); ++i) {
                   std::vector<double> od, bc, co;
                   for (NodeId v : sets[i]) {
                     od.push_back(static_cast<double>(stats.outdegree[v]));
                     bc.push_back(stats.betweenness[v]);
                     co.push_back(static_cast<double>(stats.coreness[v]));
                   }
                   s << o.seed_files[i] << '\t' << cv(od) << '\t' << cv(bc)
                     << '\t' << cv(co) << '\n';
                 }
               }));
  }
  return 0;
}

int CmdExample2(const Options& o, RunContext& ctx, std::ostream& out) {
  Example2 ex = MakeExample2();
  std::vector<DiversityVariant> variants;
  if (o.variant == "both") {
    variants = {DiversityVariant::kGlobal, DiversityVariant::kLocal};
  } else {
    variants = {ParseDiversityVariant(o.variant)};
  }
  std::string text;
  for (DiversityVariant v : variants) {
    SelectionConfig config{o.k, o.alpha, o.eta, v, 1};
    SeedResult r = DtimSelect(ex.diffusion, ex.targets, config);
    for (const auto& s : r.seeds) {
      std::string line = "seed: " + ex.name(s.node);
      if (variants.size() > 1) line = ToString(v) + " " + line;
      text += line + '\n';
    }
  }
  ctx.Output("seeds.txt", text);
  out << text;
  return 0;
}

// Range checks repeated after parsing so environment values are validated
// like flags. Returns an empty string when everything is in range.
std::string ValidateRanges(const Options& o) {
  if (o.k < 1) return "--k must be at least 1";
  if (!(o.alpha >= 0.0 && o.alpha <= 1.0)) return "--alpha must lie in [0, 1]";
  if (!(o.eta >= 0.0 && o.eta <= 1.0)) return "--eta must lie in [0, 1]";
  if (!(o.damping >= 0.0 && o.damping <= 1.0)) {
    return "--damping must lie in [0, 1]";
  }
  if (!(o.tolerance > 0.0)) return "--tolerance must be positive";
  if (o.max_iterations < 1) return "--max-iterations must be positive";
  if (o.epsilon_r && !(*o.epsilon_r > 0.0)) {
    return "--epsilon-r must be positive";
  }
  if (o.L && !(*o.L >= 0.0 && *o.L <= 1.0)) return "--L must lie in [0, 1]";
  if (!(o.L_perc > 0.0 && o.L_perc <= 100.0)) {
    return "--L-perc must lie in (0, 100]";
  }
  if (o.runs < 1) return "--runs must be positive";
  if (!(o.epsilon > 0.0)) return "--epsilon must be positive";
  if (!(o.ell > 0.0)) return "--ell must be positive";
  if (o.theta && *o.theta < 1) return "--theta must be positive";
  if (o.max_theta < 1) return "--max-theta must be positive";
  if (o.threads < 0) return "--threads must be non-negative";
  for (double a : o.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) return "--alphas values must lie in [0, 1]";
  }
  for (int k : o.ks) {
    if (k < 1) return "--ks values must be positive";
  }
  return {};
}

std::string EnvName(const std::string& long_name) {
  std::string env = kEnvPrefix;
  for (char c : long_name) {
    env += c == '-' ? '_' : static_cast<char>(std::toupper(
                                static_cast<unsigned char>(c)));
  }
  return env;
}

json Parameters(const CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help") continue;
    if (opt->count() > 0 || !opt->get_envname().empty()) {
      const auto& res = opt->results();
      if (!res.empty()) {
        params[name] = res.size() == 1 ? json(res.front()) : json(res);
        continue;
      }
    }
    const std::string def = opt->get_default_str();
    params[name] = def.empty() ? json(nullptr) : json(def);
  }
  return params;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Diversity-sensitive targeted influence maximization",
               "dtim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", DTIM_VERSION);
  app.option_defaults()->always_capture_default();
  Options o;

  using Handler = std::function<int(const Options&, RunContext&, std::ostream&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help,
                 Handler handler) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--out", o.out_dir, "Output directory");
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber);
    commands.emplace_back(sub, std::move(handler));
    return sub;
  };
  auto ranking = [&](CLI::App* sub) {
    sub->add_option("--damping", o.damping, "LurkerRank damping factor")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--tolerance", o.tolerance, "Convergence tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", o.max_iterations,
                    "Iteration cap")->check(CLI::PositiveNumber);
  };
  auto diffusion = [&](CLI::App* sub) {
    sub->add_option("--diffusion", o.diffusion, "Diffusion graph file")
        ->required();
  };
  auto targets = [&](CLI::App* sub) {
    auto* abs = sub->add_option("--L", o.L, "Absolute target threshold")
                    ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--L-perc", o.L_perc, "Target percentage of nodes")
        ->check(CLI::Range(0.0, 100.0))
        ->excludes(abs);
  };
  auto budget = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "Seed budget")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", o.alpha, "Capital/diversity trade-off")
        ->check(CLI::Range(0.0, 1.0));
  };

  {
    auto* sub = add("ingest", "Load an edge list, write it back with centrality",
                    CmdIngest);
    sub->add_option("--input", o.input, "Edge-list file")->required();
  }
  {
    auto* sub = add("rank", "Compute LurkerRank scores", CmdRank);
    sub->add_option("--input", o.input, "Edge-list file")->required();
    ranking(sub);
  }
  {
    auto* sub = add("weight", "Build the weighted diffusion graph", CmdWeight);
    sub->add_option("--input", o.input, "Edge-list file")->required();
    ranking(sub);
    sub->add_option("--epsilon-r", o.epsilon_r, "Rank smoothing constant")
        ->check(CLI::PositiveNumber);
  }
  {
    auto* sub = add("targets", "Select the target set", CmdTargets);
    diffusion(sub);
    targets(sub);
  }
  {
    auto* sub = add("select", "Greedy DTIM seed selection", CmdSelect);
    diffusion(sub);
    targets(sub);
    budget(sub);
    sub->add_option("--eta", o.eta, "Path pruning threshold")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--variant", o.variant, "Diversity variant")
        ->check(CLI::IsMember({"local", "global"}));
  }
  {
    auto* sub = add("ris-select", "RR-set based seed selection", CmdRisSelect);
    diffusion(sub);
    targets(sub);
    budget(sub);
    sub->add_option("--variant", o.variant, "Diversity variant")
        ->check(CLI::IsMember({"local", "global", "capital-only"}));
    sub->add_option("--epsilon", o.epsilon, "Approximation parameter")
        ->check(CLI::PositiveNumber);
    sub->add_option("--ell", o.ell, "Failure probability exponent")
        ->check(CLI::PositiveNumber);
    sub->add_option("--theta", o.theta, "Fixed number of RR sets")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-theta", o.max_theta, "Cap on RR-set count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rng-seed", o.rng_seed, "Random seed");
    sub->add_option("--cache", o.cache, "RR-set pool cache file");
  }
  {
    auto* sub = add("simulate", "Monte Carlo capital estimation", CmdSimulate);
    diffusion(sub);
    targets(sub);
    sub->add_option("--seeds", o.seeds_file, "Seed file")->required();
    sub->add_option("--runs", o.runs, "Monte Carlo runs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rng-seed", o.rng_seed, "Random seed");
  }
  {
    auto* sub = add("sweep", "Capital and overlap over an alpha x k grid",
                    CmdSweep);
    diffusion(sub);
    targets(sub);
    sub->add_option("--alphas", o.alphas, "Alpha grid")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--ks", o.ks, "Budget grid")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    sub->add_option("--eta", o.eta, "Path pruning threshold")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--variant", o.variant, "Diversity variant")
        ->check(CLI::IsMember({"local", "global"}));
    sub->add_option("--runs", o.runs, "Monte Carlo runs")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rng-seed", o.rng_seed, "Random seed");
  }
  {
    auto* sub = add("overlap", "Seed-set overlap and centrality spread",
                    CmdOverlap);
    sub->add_option("--seeds", o.seed_files, "Seed files")
        ->required()
        ->expected(1, -1);
    sub->add_option("--k", o.k, "Seed budget")->check(CLI::PositiveNumber);
    sub->add_option("--graph", o.graph_file, "Edge-list file for centrality");
  }
  {
    auto* sub = add("example2", "Run the worked example fixture", CmdExample2);
    o.k = 10;
    sub->add_option("--variant", o.variant, "local, global or both")
        ->check(CLI::IsMember({"local", "global", "both"}));
    sub->add_option("--eta", o.eta, "Path pruning threshold")
        ->check(CLI::Range(0.0, 1.0));
    budget(sub);
  }
  for (CLI::App* sub : app.get_subcommands({})) {
    for (CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") {
        continue;
      }
      opt->envname(EnvName(opt->get_lnames().front()));
    }
  }

  // example2 defaults differ from the pipeline defaults.
  CLI::App* example2 = app.get_subcommand("example2");
  example2->preparse_callback([&](std::size_t) {
    o.k = 1;
    o.eta = 0.0;
  });
  example2->get_option("--k")->default_str("1");
  example2->get_option("--eta")->default_str("0");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << DTIM_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) {
      err << app.help();
    } else {
      err << app.get_subcommands().front()->help();
    }
    return 2;
  }

  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    for (const CLI::Option* opt : sub->get_options()) {
      const std::string& env = opt->get_envname();
      if (env.empty() || opt->count() > 0) continue;
      const char* value = std::getenv(env.c_str());
      if (value != nullptr && *value != '\0') {
        err << "usage error: invalid value in " << env << ": " << value
            << '\n';
        return 2;
      }
    }
    if (const std::string problem = ValidateRanges(o); !problem.empty()) {
      err << "usage error: " << problem << '\n' << sub->help();
      return 2;
    }
    try {
      RunContext ctx(sub->get_name(), o.out_dir);
      const int status = handler(o, ctx, out);
      ctx.Finish(Parameters(sub));
      return status;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

int Run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace dtim::cli
