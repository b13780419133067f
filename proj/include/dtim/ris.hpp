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

#ifndef DTIM_RIS_HPP_
#define DTIM_RIS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtim/diffusion.hpp"
#include "dtim/greedy.hpp"
#include "dtim/rng.hpp"

namespace dtim {

// Reverse-reachable sample rooted at a target node.
struct RRSet {
  NodeId root = 0;
  // Reverse-walk order; members[0] is the root and members[i + 1] is the
  // live in-neighbor chosen by members[i].
  std::vector<NodeId> members;
  std::uint64_t width = 0;  // edges pointing into members
  std::vector<NodeId> target_members;  // sorted
  double member_ell_sum = 0.0;         // sum of l over target members
};

// Draws roots from the target set with probability l(v) / L_TS.
class RootSampler {
 public:
  RootSampler(const DiffusionGraph& dg, const TargetSet& targets);

  NodeId Sample(RandomStream& rng) const;
  double probability(NodeId v) const;
  double total_weight() const { return total_; }  // L_TS

 private:
  std::vector<NodeId> support_;
  std::vector<double> cumulative_;
  std::vector<double> weight_;  // per node, zero outside the target set
  double total_ = 0.0;
};

// LT reverse walk: the current node picks in-edge (u, v) with probability
// b(u, v) or stops with probability 1 - sum_u b(u, v); a repeated node ends
// the walk.
RRSet GenerateRRSet(const DiffusionGraph& dg, const TargetSet& targets,
                    NodeId root, RandomStream& rng);

// Rebuilds width/target fields from a member list.
RRSet MakeRRSet(const DiffusionGraph& dg, const TargetSet& targets,
                std::vector<NodeId> members);

// Sample i uses Philox stream i of the seed; Draw hands out consecutive
// indices, so a pool is reproducible regardless of thread count.
class RRSetSampler {
 public:
  RRSetSampler(const DiffusionGraph& dg, const TargetSet& targets,
               std::uint64_t seed);

  RRSet Sample(std::uint64_t index) const;
  std::vector<RRSet> Draw(std::uint64_t count, int threads = 1);

  const DiffusionGraph& diffusion() const { return *dg_; }
  const TargetSet& targets() const { return *targets_; }
  const RootSampler& roots() const { return roots_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_index() const { return next_; }

 private:
  const DiffusionGraph* dg_;
  const TargetSet* targets_;
  RootSampler roots_;
  std::uint64_t seed_;
  std::uint64_t next_ = 0;
};

// [1 - (1 - |TS_R| / m)^k] * member_ell_sum / |TS_R|. The bracket is zero
// when m == 0.
double KappaHat(const RRSet& rr, std::size_t edge_count, int k);

// n * mean kappa-hat over a pool.
double KptEstimator(std::span<const RRSet> pool, std::size_t node_count,
                    std::size_t edge_count, int k);

struct KptOptions {
  double epsilon = 0.1;
  double ell = 1.0;  // failure-probability exponent, n^-ell
  // Upper bound on theta (and on any single sampling batch).
  std::uint64_t max_theta = 2'000'000;
  // Lower bound used when the doubling loop never accepts; defaults to
  // (1/n) * min positive target weight.
  std::optional<double> kpt_floor;
  int threads = 1;
};

struct KptEstimate {
  double kpt = 0.0;
  double refined_kpt = 0.0;
  std::uint64_t theta = 0;
  double epsilon = 0.0;
  double lambda = 0.0;
};

struct KptRun {
  KptEstimate estimate;
  std::vector<RRSet> pool;  // batch accepted by the doubling loop
  bool floored = false;
};

// (8 + 2 eps) n (ell ln n + ln C(n, k) + ln 2) / eps^2.
double SampleSizeLambda(std::size_t n, int k, double epsilon, double ell);

// Doubling loop: batch i holds (6 ell ln n + 6 ln log2 n) 2^i samples and is
// accepted once its mean kappa-hat exceeds 2^-i, giving
// kpt = n * mean / 2. theta = ceil(lambda / kpt), capped by max_theta.
KptRun EstimateKpt(RRSetSampler& sampler, int k, const KptOptions& options = {});

struct KptRefinement {
  std::vector<NodeId> seeds;       // greedy cover of the estimation pool
  double coverage_fraction = 0.0;  // share of fresh sets covered
  double epsilon_prime = 0.0;
  double kpt_prime = 0.0;
  std::uint64_t samples = 0;
};

// Fraction of sets hit by `seeds`; 0 for an empty pool. Roots are drawn in
// proportion to l, so this estimates seed-inclusive capital / L_TS.
double CoverageFraction(std::span<const RRSet> pool,
                        std::span<const NodeId> seeds,
                        const DiffusionGraph& dg);

// Greedy max cover with unit set weights. Returns up to k nodes; stops early
// once every set is covered.
std::vector<NodeId> GreedyMaxCover(std::span<const RRSet> pool, int k,
                                        const DiffusionGraph& dg);

// Covers run.pool greedily, measures the covered fraction f on a fresh pool
// of lambda' / kpt samples, and sets
//   refined_kpt = max(kpt, f * n / (1 + eps')),
//   eps' = 5 (ell eps^2 / (k + ell))^(1/3),
//   lambda' = (2 + eps') ell n ln n / eps'^2.
// theta is recomputed from the refined value.
KptRefinement RefineKpt(RRSetSampler& sampler, int k, KptRun& run,
                        const KptOptions& options = {});

enum class RisVariant { kCapitalOnly, kLocal, kGlobal };
std::string ToString(RisVariant variant);
RisVariant ParseRisVariant(const std::string& text);

// Total RR-diversity per node. Paths of each root's RR sets are merged into
// a prefix tree whose leaves form the boundary multiset. Global: the mean
// log-smoothed boundary value over a node's leaf occurrences (0 without
// one). Local: for every depth, the local diversity of nodes one level
// below against the boundary of the tree truncated at that depth, averaged
// per depth and then uniformly over depths. Both are finally averaged over
// the trees where the node appears below the root.
std::vector<double> RrDiversity(std::span<const RRSet> pool,
                                const DiffusionGraph& dg, RisVariant variant);

struct RisSelectionConfig {
  int k = 10;
  double alpha = 0.5;
  RisVariant variant = RisVariant::kGlobal;
};

// k greedy rounds maximizing alpha * capital score + (1 - alpha) * diversity
// where the capital score is the count of uncovered sets a node hits,
// scaled by L_TS / pool size, and diversity is
// the max-normalized RR-diversity (zero for kCapitalOnly). Covered sets are
// dropped after each pick. Status kNoCandidates when the pool runs out.
SeedResult RisNodeSelection(std::span<const RRSet> pool,
                            const DiffusionGraph& dg, const TargetSet& targets,
                            const RisSelectionConfig& config);

struct RisConfig {
  int k = 10;
  double alpha = 0.5;
  RisVariant variant = RisVariant::kGlobal;
  std::uint64_t rng_seed = 0;
  KptOptions kpt;
  // Use this many RR sets instead of the derived theta.
  std::optional<std::uint64_t> theta_override;
};

struct RisOutcome {
  SeedResult result;
  KptEstimate kpt;
  KptRefinement refinement;
  std::vector<RRSet> pool;
};

// Sampling, KPT estimation, refinement and node selection end to end.
RisOutcome RisSelect(const DiffusionGraph& dg, const TargetSet& targets,
                     const RisConfig& config);

// Same as RisSelect but selecting on a caller-provided pool.
RisOutcome RisSelectOnPool(const DiffusionGraph& dg, const TargetSet& targets,
                           std::vector<RRSet> pool, const RisConfig& config);

struct PoolCacheHeader {
  std::uint64_t graph_hash = 0;
  std::uint64_t theta = 0;
  std::uint64_t rng_seed = 0;
};

// Binary layout (little endian): magic "DTIMRR01", graph hash, theta, rng
// seed as u64, then per set a u32 length followed by u32 member ids in walk
// order.
void WritePoolCache(std::ostream& out, std::span<const RRSet> pool,
                    const PoolCacheHeader& header);
// Throws Error on a bad magic or truncated input and DomainError when the
// graph hash does not match dg.
std::vector<RRSet> ReadPoolCache(std::istream& in, const DiffusionGraph& dg,
                                 const TargetSet& targets,
                                 PoolCacheHeader* header = nullptr);

}  // namespace dtim

#endif  // DTIM_RIS_HPP_
