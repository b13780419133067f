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

#include "dtim/ris.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "dtim/errors.hpp"
#include "dtim/parallel.hpp"

namespace dtim {

RootSampler::RootSampler(const DiffusionGraph& dg, const TargetSet& targets)
    : weight_(dg.node_count(), 0.0) {
  for (NodeId t : targets.members()) {
    if (t >= dg.node_count()) throw DomainError("target out of range");
    const double w = dg.node_weight(t);
    weight_[t] = w;
    if (w <= 0.0) continue;
    total_ += w;
    support_.push_back(t);
    cumulative_.push_back(total_);
  }
  if (!(total_ > 0.0)) {
    throw DomainError("targets carry no weight to sample roots from");
  }
}

NodeId RootSampler::Sample(RandomStream& rng) const {
  const double x = rng.uniform() * total_;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
  if (it == cumulative_.end()) --it;
  return support_[static_cast<std::size_t>(it - cumulative_.begin())];
}

double RootSampler::probability(NodeId v) const {
  return v < weight_.size() ? weight_[v] / total_ : 0.0;
}

RRSet MakeRRSet(const DiffusionGraph& dg, const TargetSet& targets,
                std::vector<NodeId> members) {
  if (members.empty()) throw DomainError("RR set without a root");
  RRSet rr;
  rr.root = members.front();
  rr.members = std::move(members);
  for (NodeId v : rr.members) {
    if (v >= dg.node_count()) throw DomainError("RR member out of range");
    rr.width += dg.graph().in_degree(v);
    if (targets.contains(v)) {
      rr.target_members.push_back(v);
      rr.member_ell_sum += dg.node_weight(v);
    }
  }
  std::sort(rr.target_members.begin(), rr.target_members.end());
  return rr;
}

RRSet GenerateRRSet(const DiffusionGraph& dg, const TargetSet& targets,
                    NodeId root, RandomStream& rng) {
  if (root >= dg.node_count()) throw DomainError("root out of range");
  const SocialGraph& g = dg.graph();
  std::vector<NodeId> members{root};
  NodeId current = root;
  while (true) {
    auto sources = g.in_neighbors(current);
    if (sources.empty()) break;
    auto weights = dg.in_weights(current);
    const double x = rng.uniform();
    double acc = 0.0;
    std::optional<NodeId> next;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      acc += weights[i];
      if (x < acc) {
        next = sources[i];
        break;
      }
    }
    if (!next) break;
    if (std::find(members.begin(), members.end(), *next) != members.end()) {
      break;
    }
    members.push_back(*next);
    current = *next;
  }
  return MakeRRSet(dg, targets, std::move(members));
}

RRSetSampler::RRSetSampler(const DiffusionGraph& dg, const TargetSet& targets,
                           std::uint64_t seed)
    : dg_(&dg), targets_(&targets), roots_(dg, targets), seed_(seed) {}

RRSet RRSetSampler::Sample(std::uint64_t index) const {
  RandomStream rng(seed_, index);
  const NodeId root = roots_.Sample(rng);
  return GenerateRRSet(*dg_, *targets_, root, rng);
}

std::vector<RRSet> RRSetSampler::Draw(std::uint64_t count, int threads) {
  std::vector<RRSet> out(count);
  const std::uint64_t base = next_;
  ParallelFor(count, threads, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t i = begin; i < end; ++i) out[i] = Sample(base + i);
  });
  next_ += count;
  return out;
}

double KappaHat(const RRSet& rr, std::size_t edge_count, int k) {
  const double hits = static_cast<double>(rr.target_members.size());
  if (hits == 0.0) return 0.0;
  double bracket = 0.0;
  if (edge_count > 0) {
    const double miss =
        std::max(0.0, 1.0 - hits / static_cast<double>(edge_count));
    bracket = 1.0 - std::pow(miss, k);
  }
  return bracket * rr.member_ell_sum / hits;
}

double KptEstimator(std::span<const RRSet> pool, std::size_t node_count,
                    std::size_t edge_count, int k) {
  if (pool.empty()) return 0.0;
  double sum = 0.0;
  for (const RRSet& rr : pool) sum += KappaHat(rr, edge_count, k);
  return static_cast<double>(node_count) * sum /
         static_cast<double>(pool.size());
}

double SampleSizeLambda(std::size_t n, int k, double epsilon, double ell) {
  const double nd = static_cast<double>(n);
  // ln C(n, k) via lgamma.
  const double log_binom = std::lgamma(nd + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(nd - k + 1.0);
  return (8.0 + 2.0 * epsilon) * nd *
         (ell * std::log(nd) + log_binom + std::log(2.0)) /
         (epsilon * epsilon);
}

namespace {

void CheckBudget(int k, std::size_t n) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (static_cast<std::size_t>(k) > n) throw DomainError("k exceeds n");
}

std::uint64_t ThetaFor(double lambda, double kpt, std::uint64_t cap) {
  const double theta = std::ceil(lambda / kpt);
  if (!(theta < static_cast<double>(cap))) return cap;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(theta));
}

}  // namespace

KptRun EstimateKpt(RRSetSampler& sampler, int k, const KptOptions& options) {
  const DiffusionGraph& dg = sampler.diffusion();
  const std::size_t n = dg.node_count();
  const std::size_t m = dg.edge_count();
  CheckBudget(k, n);
  if (!(options.epsilon > 0.0)) throw DomainError("epsilon must be positive");

  const double nd = static_cast<double>(n);
  const double log2n = std::log2(std::max(nd, 2.0));
  const int rounds = std::max(1, static_cast<int>(std::floor(log2n)) - 1);
  const double per_round =
      6.0 * options.ell * std::log(std::max(nd, 2.0)) +
      6.0 * std::log(std::max(log2n, 1.0 + 1e-12));

  KptRun run;
  for (int i = 1; i <= rounds; ++i) {
    const auto batch = static_cast<std::uint64_t>(std::min(
        std::ceil(per_round * std::ldexp(1.0, i)),
        static_cast<double>(options.max_theta)));
    run.pool = sampler.Draw(batch, options.threads);
    double sum = 0.0;
    for (const RRSet& rr : run.pool) sum += KappaHat(rr, m, k);
    const double mean = sum / static_cast<double>(batch);
    if (mean > std::ldexp(1.0, -i)) {
      run.estimate.kpt = nd * mean / 2.0;
      break;
    }
  }
  if (run.estimate.kpt <= 0.0) {
    double floor_value = 0.0;
    if (options.kpt_floor) {
      floor_value = *options.kpt_floor;
    } else {
      double min_weight = 0.0;
      for (NodeId t : sampler.targets().members()) {
        const double w = dg.node_weight(t);
        if (w > 0.0 && (min_weight == 0.0 || w < min_weight)) min_weight = w;
      }
      floor_value = min_weight / nd;
    }
    if (!(floor_value > 0.0)) throw DomainError("KPT floor must be positive");
    run.estimate.kpt = floor_value;
    run.floored = true;
  }
  run.estimate.refined_kpt = run.estimate.kpt;
  run.estimate.epsilon = options.epsilon;
  run.estimate.lambda = SampleSizeLambda(n, k, options.epsilon, options.ell);
  run.estimate.theta =
      ThetaFor(run.estimate.lambda, run.estimate.kpt, options.max_theta);
  return run;
}

double CoverageFraction(std::span<const RRSet> pool,
                        std::span<const NodeId> seeds,
                        const DiffusionGraph& dg) {
  std::vector<char> chosen(dg.node_count(), 0);
  for (NodeId s : seeds) chosen[s] = 1;
  std::size_t covered = 0;
  for (const RRSet& rr : pool) {
    for (NodeId v : rr.members) {
      if (chosen[v]) {
        ++covered;
        break;
      }
    }
  }
  return pool.empty() ? 0.0
                      : static_cast<double>(covered) /
                            static_cast<double>(pool.size());
}

namespace {

// Node -> indices of the sets containing it.
std::vector<std::vector<std::uint32_t>> InvertPool(
    std::span<const RRSet> pool, std::size_t n) {
  std::vector<std::vector<std::uint32_t>> index(n);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    for (NodeId v : pool[i].members) {
      index[v].push_back(static_cast<std::uint32_t>(i));
    }
  }
  return index;
}

// Coverage greedy with an optional static per-node bonus. Roots are already
// drawn in proportion to l, so every RR set counts once. Returns picks in
// order with the capital score at pick time.
struct CoverPick {
  NodeId node;
  double capital;
  double bonus;
  double objective;
};

std::vector<CoverPick> CoverGreedy(std::span<const RRSet> pool, int k,
                                   const DiffusionGraph& dg,
                                   double capital_scale, double alpha,
                                   std::span<const double> bonus,
                                   bool* exhausted) {
  const std::size_t n = dg.node_count();
  auto index = InvertPool(pool, n);
  std::vector<double> score(n, 0.0);
  std::vector<char> present(n, 0);
  for (const RRSet& rr : pool) {
    for (NodeId v : rr.members) {
      score[v] += 1.0;
      present[v] = 1;
    }
  }
  std::vector<char> covered(pool.size(), 0);
  std::vector<char> picked(n, 0);
  std::size_t remaining = pool.size();
  std::vector<CoverPick> picks;
  *exhausted = false;
  while (static_cast<int>(picks.size()) < k) {
    if (remaining == 0) {
      *exhausted = true;
      break;
    }
    std::optional<CoverPick> best;
    for (NodeId v = 0; v < n; ++v) {
      if (!present[v] || picked[v]) continue;
      const double cap = score[v] * capital_scale;
      const double div = bonus.empty() ? 0.0 : bonus[v];
      const double obj = alpha * cap + (1.0 - alpha) * div;
      if (!best || obj > best->objective) best = CoverPick{v, cap, div, obj};
    }
    if (!best) {
      *exhausted = true;
      break;
    }
    picked[best->node] = 1;
    picks.push_back(*best);
    for (std::uint32_t i : index[best->node]) {
      if (covered[i]) continue;
      covered[i] = 1;
      --remaining;
      for (NodeId v : pool[i].members) score[v] -= 1.0;
    }
  }
  return picks;
}

}  // namespace

std::vector<NodeId> GreedyMaxCover(std::span<const RRSet> pool, int k,
                                        const DiffusionGraph& dg) {
  bool exhausted = false;
  auto picks = CoverGreedy(pool, k, dg, 1.0, 1.0, {}, &exhausted);
  std::vector<NodeId> out;
  for (const auto& p : picks) out.push_back(p.node);
  return out;
}

KptRefinement RefineKpt(RRSetSampler& sampler, int k, KptRun& run,
                        const KptOptions& options) {
  const DiffusionGraph& dg = sampler.diffusion();
  const double nd = static_cast<double>(dg.node_count());
  KptRefinement out;
  out.seeds = GreedyMaxCover(run.pool, k, dg);
  const double ell = options.ell;
  const double eps = options.epsilon;
  out.epsilon_prime = 5.0 * std::cbrt(ell * eps * eps / (k + ell));
  const double lambda_prime = (2.0 + out.epsilon_prime) * ell * nd *
                              std::log(std::max(nd, 2.0)) /
                              (out.epsilon_prime * out.epsilon_prime);
  out.samples = ThetaFor(lambda_prime, run.estimate.kpt, options.max_theta);
  const std::vector<RRSet> fresh = sampler.Draw(out.samples, options.threads);
  out.coverage_fraction = CoverageFraction(fresh, out.seeds, dg);
  out.kpt_prime = out.coverage_fraction * nd / (1.0 + out.epsilon_prime);
  run.estimate.refined_kpt = std::max(run.estimate.kpt, out.kpt_prime);
  run.estimate.theta = ThetaFor(run.estimate.lambda, run.estimate.refined_kpt,
                                options.max_theta);
  return out;
}

std::string ToString(RisVariant variant) {
  switch (variant) {
    case RisVariant::kCapitalOnly:
      return "capital-only";
    case RisVariant::kLocal:
      return "local";
    case RisVariant::kGlobal:
      return "global";
  }
  return "unknown";
}

RisVariant ParseRisVariant(const std::string& text) {
  if (text == "capital-only") return RisVariant::kCapitalOnly;
  if (text == "local") return RisVariant::kLocal;
  if (text == "global") return RisVariant::kGlobal;
  throw DomainError("unknown RIS variant '" + text + "'");
}

namespace {

// Prefix tree of the reverse paths sharing one root.
struct PathTree {
  struct Position {
    NodeId node;
    std::uint32_t depth;
    std::uint32_t children = 0;
  };
  std::vector<Position> positions;  // positions[0] is the root

  explicit PathTree(NodeId root) { positions.push_back({root, 0}); }

  void Insert(std::span<const NodeId> members,
              std::unordered_map<std::uint64_t, std::uint32_t>& edges) {
    std::uint32_t at = 0;
    for (std::size_t i = 1; i < members.size(); ++i) {
      const std::uint64_t key = (static_cast<std::uint64_t>(at) << 32) |
                                members[i];
      auto [it, inserted] = edges.try_emplace(
          key, static_cast<std::uint32_t>(positions.size()));
      if (inserted) {
        ++positions[at].children;
        positions.push_back({members[i], static_cast<std::uint32_t>(i)});
      }
      at = it->second;
    }
  }
};

// Per-tree value of every node occurring below the root.
void TreeGlobalValues(const PathTree& tree, const SocialGraph& g,
                      std::unordered_map<NodeId, double>& values) {
  std::size_t leaves = 0;
  for (const auto& p : tree.positions) {
    if (p.children == 0) ++leaves;
  }
  const double b = static_cast<double>(leaves);
  std::unordered_map<NodeId, std::pair<double, std::size_t>> leaf_sum;
  for (std::size_t i = 1; i < tree.positions.size(); ++i) {
    const auto& p = tree.positions[i];
    values.try_emplace(p.node, 0.0);
    if (p.children != 0) continue;
    // A leaf has no tree edge into it and exactly one out of it.
    const double value =
        static_cast<double>(g.in_degree(p.node)) / b * std::log1p(1.0 / b);
    auto& [sum, count] = leaf_sum[p.node];
    sum += value;
    ++count;
  }
  for (const auto& [node, acc] : leaf_sum) {
    values[node] = acc.first / static_cast<double>(acc.second);
  }
}

void TreeLocalValues(const PathTree& tree, const SocialGraph& g,
                     std::unordered_map<NodeId, double>& values) {
  std::uint32_t max_depth = 0;
  for (const auto& p : tree.positions) max_depth = std::max(max_depth, p.depth);
  std::vector<std::vector<std::size_t>> by_depth(max_depth + 1);
  for (std::size_t i = 0; i < tree.positions.size(); ++i) {
    by_depth[tree.positions[i].depth].push_back(i);
  }
  // Per node: sum over depths of the per-depth mean, and number of depths.
  std::unordered_map<NodeId, std::pair<double, std::size_t>> acc;
  double closed_sum = 0.0;       // positions above the cut, children counted
  std::size_t closed_size = 0;
  for (std::uint32_t d = 0; d < max_depth; ++d) {
    double sum = closed_sum;
    std::size_t size = closed_size;
    for (std::size_t i : by_depth[d]) {
      const std::size_t ext = g.in_degree(tree.positions[i].node);
      sum += static_cast<double>(ext);
      if (ext > 0) ++size;
    }
    if (sum > 0.0) {
      const double bs = static_cast<double>(size);
      std::unordered_map<NodeId, std::pair<double, std::size_t>> level;
      for (std::size_t i : by_depth[d + 1]) {
        const NodeId u = tree.positions[i].node;
        const double value =
            bs / (1.0 + bs) *
            (1.0 + static_cast<double>(g.in_degree(u)) / sum);
        auto& [s, c] = level[u];
        s += value;
        ++c;
      }
      for (const auto& [u, sc] : level) {
        auto& [s, c] = acc[u];
        s += sc.first / static_cast<double>(sc.second);
        ++c;
      }
    }
    for (std::size_t i : by_depth[d]) {
      const auto& p = tree.positions[i];
      const std::size_t ext = g.in_degree(p.node) - p.children;
      closed_sum += static_cast<double>(ext);
      if (ext > 0) ++closed_size;
    }
  }
  for (std::size_t i = 1; i < tree.positions.size(); ++i) {
    values.try_emplace(tree.positions[i].node, 0.0);
  }
  for (const auto& [u, sc] : acc) {
    values[u] = sc.first / static_cast<double>(sc.second);
  }
}

}  // namespace

std::vector<double> RrDiversity(std::span<const RRSet> pool,
                                const DiffusionGraph& dg, RisVariant variant) {
  const std::size_t n = dg.node_count();
  std::vector<double> total(n, 0.0);
  if (variant == RisVariant::kCapitalOnly) return total;
  std::vector<std::uint32_t> trees(n, 0);

  std::vector<NodeId> roots;
  std::unordered_map<NodeId, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(pool[i].root);
    if (inserted) roots.push_back(pool[i].root);
    it->second.push_back(i);
  }
  std::sort(roots.begin(), roots.end());
  for (NodeId root : roots) {
    PathTree tree(root);
    std::unordered_map<std::uint64_t, std::uint32_t> edges;
    for (std::size_t i : groups[root]) tree.Insert(pool[i].members, edges);
    std::unordered_map<NodeId, double> values;
    if (variant == RisVariant::kGlobal) {
      TreeGlobalValues(tree, dg.graph(), values);
    } else {
      TreeLocalValues(tree, dg.graph(), values);
    }
    for (const auto& [u, value] : values) {
      total[u] += value;
      ++trees[u];
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (trees[v] > 0) total[v] /= static_cast<double>(trees[v]);
  }
  return total;
}

SeedResult RisNodeSelection(std::span<const RRSet> pool,
                            const DiffusionGraph& dg, const TargetSet& targets,
                            const RisSelectionConfig& config) {
  if (pool.empty()) throw DomainError("empty RR-set pool");
  if (config.k < 1) throw DomainError("k must be at least 1");
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1]");
  }
  double l_ts = 0.0;
  for (NodeId t : targets.members()) l_ts += dg.node_weight(t);
  const double scale = l_ts / static_cast<double>(pool.size());

  std::vector<double> diversity;
  if (config.variant != RisVariant::kCapitalOnly) {
    diversity = MaxNormalize(RrDiversity(pool, dg, config.variant));
  }
  const double alpha =
      config.variant == RisVariant::kCapitalOnly ? 1.0 : config.alpha;
  bool exhausted = false;
  auto picks = CoverGreedy(pool, config.k, dg, scale, alpha, diversity,
                           &exhausted);
  SeedResult result;
  for (const auto& p : picks) {
    result.seeds.push_back({p.node, p.objective, p.capital, p.bonus});
  }
  result.status = static_cast<int>(picks.size()) == config.k
                      ? SelectionStatus::kComplete
                      : SelectionStatus::kNoCandidates;
  return result;
}

RisOutcome RisSelectOnPool(const DiffusionGraph& dg, const TargetSet& targets,
                           std::vector<RRSet> pool, const RisConfig& config) {
  RisOutcome out;
  out.pool = std::move(pool);
  out.result = RisNodeSelection(out.pool, dg, targets,
                                {config.k, config.alpha, config.variant});
  out.kpt.theta = out.pool.size();
  out.kpt.epsilon = config.kpt.epsilon;
  return out;
}

RisOutcome RisSelect(const DiffusionGraph& dg, const TargetSet& targets,
                     const RisConfig& config) {
  RRSetSampler sampler(dg, targets, config.rng_seed);
  KptRun run = EstimateKpt(sampler, config.k, config.kpt);
  KptRefinement refinement = RefineKpt(sampler, config.k, run, config.kpt);
  const std::uint64_t theta = config.theta_override.value_or(run.estimate.theta);
  RisOutcome out = RisSelectOnPool(dg, targets,
                                   sampler.Draw(theta, config.kpt.threads),
                                   config);
  out.kpt = run.estimate;
  out.kpt.theta = theta;
  out.refinement = std::move(refinement);
  return out;
}

namespace {

constexpr char kPoolMagic[8] = {'D', 'T', 'I', 'M', 'R', 'R', '0', '1'};

template <typename T>
void PutLe(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<unsigned char>(value >> (8 * i));
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T GetLe(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error("truncated RR-set cache");
  }
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    value |= static_cast<T>(bytes[i]) << (8 * i);
  }
  return value;
}

}  // namespace

void WritePoolCache(std::ostream& out, std::span<const RRSet> pool,
                    const PoolCacheHeader& header) {
  out.write(kPoolMagic, sizeof(kPoolMagic));
  PutLe<std::uint64_t>(out, header.graph_hash);
  PutLe<std::uint64_t>(out, pool.size());
  PutLe<std::uint64_t>(out, header.rng_seed);
  for (const RRSet& rr : pool) {
    PutLe<std::uint32_t>(out, static_cast<std::uint32_t>(rr.members.size()));
    for (NodeId v : rr.members) PutLe<std::uint32_t>(out, v);
  }
}

std::vector<RRSet> ReadPoolCache(std::istream& in, const DiffusionGraph& dg,
                                 const TargetSet& targets,
                                 PoolCacheHeader* header) {
  char magic[sizeof(kPoolMagic)];
  if (!in.read(magic, sizeof(magic)) ||
      !std::equal(magic, magic + sizeof(magic), kPoolMagic)) {
    throw Error("not an RR-set cache");
  }
  PoolCacheHeader h;
  h.graph_hash = GetLe<std::uint64_t>(in);
  h.theta = GetLe<std::uint64_t>(in);
  h.rng_seed = GetLe<std::uint64_t>(in);
  if (h.graph_hash != DiffusionHash(dg)) {
    throw DomainError("RR-set cache was built for a different graph");
  }
  std::vector<RRSet> pool;
  pool.reserve(h.theta);
  for (std::uint64_t i = 0; i < h.theta; ++i) {
    const auto len = GetLe<std::uint32_t>(in);
    std::vector<NodeId> members(len);
    for (auto& v : members) v = GetLe<std::uint32_t>(in);
    pool.push_back(MakeRRSet(dg, targets, std::move(members)));
  }
  if (header) *header = h;
  return pool;
}

}  // namespace dtim
