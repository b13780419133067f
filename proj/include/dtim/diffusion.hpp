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

#ifndef DTIM_DIFFUSION_HPP_
#define DTIM_DIFFUSION_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtim/graph.hpp"
#include "dtim/lurker_rank.hpp"

namespace dtim {

// Social graph plus LT edge weights b (indexed by EdgeId) and node target
// weights l. Invariant: for every node the incoming b values sum to <= 1.
class DiffusionGraph {
 public:
  DiffusionGraph() = default;

  // Validates and adopts the supplied weights. Throws AdmissibilityError
  // naming the first node whose incoming weights exceed 1 + 1e-12 and
  // DomainError on size mismatches or values outside [0, 1].
  DiffusionGraph(SocialGraph graph, std::vector<double> node_weight,
                 std::vector<double> edge_weight);

  const SocialGraph& graph() const { return graph_; }
  std::size_t node_count() const { return graph_.node_count(); }
  std::size_t edge_count() const { return graph_.edge_count(); }

  double node_weight(NodeId v) const { return node_weight_[v]; }
  std::span<const double> node_weights() const { return node_weight_; }
  double edge_weight(EdgeId e) const { return edge_weight_[e]; }
  std::span<const double> edge_weights() const { return edge_weight_; }

  // b(u, v) for each u in graph().in_neighbors(v), in the same order.
  std::span<const double> in_weights(NodeId v) const {
    return {in_weight_.data() + graph_.in_slot(v), graph_.in_degree(v)};
  }
  double in_weight_sum(NodeId v) const { return in_sum_[v]; }

 private:
  SocialGraph graph_;
  std::vector<double> node_weight_;
  std::vector<double> edge_weight_;
  std::vector<double> in_weight_;  // in-slot order
  std::vector<double> in_sum_;
};

struct NodeWeightOptions {
  // Smoothing constant added to (max - min); derived from the magnitude of
  // the scaled maximum when unset.
  std::optional<double> epsilon_r;
};

struct NodeWeights {
  std::vector<double> values;  // l(v) in [0, 1)
  double scale = 1.0;          // power of ten the ranks were divided by
  double epsilon_r = 0.0;
  bool degenerate = false;     // all ranks equal, every weight is zero
};

// l(v) = (r~_v - min) / ((max - min) + eps_r) where r~ is the rank vector
// divided by 10^floor(log10(min rank)) and, by default,
// eps_r = 10^floor(log10(max r~)) * 1e-2.
NodeWeights ComputeNodeWeights(std::span<const double> ranks,
                               const NodeWeightOptions& options = {});

// b(u, v) = b0(u, v) * exp(l(v) - 1) where b0 distributes v's incoming mass
// proportionally to out(u)/in(u) * rank(u) (add-one smoothed counts).
std::vector<double> ComputeEdgeWeights(const SocialGraph& g,
                                       std::span<const double> ranks,
                                       std::span<const double> node_weights);

struct DiffusionBuild {
  DiffusionGraph diffusion;
  RankVector ranks;
  NodeWeights weights;
};

// Rank, weigh nodes and edges in one go.
DiffusionBuild BuildDiffusionGraph(const SocialGraph& g,
                                   const RankOptions& rank_options = {},
                                   const NodeWeightOptions& weight_options = {});

class TargetSet {
 public:
  TargetSet() = default;
  TargetSet(std::size_t node_count, std::vector<NodeId> members,
            double threshold, std::optional<double> percentage);

  std::span<const NodeId> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(NodeId v) const { return v < flags_.size() && flags_[v]; }
  double threshold_used() const { return threshold_; }
  std::optional<double> percentage_used() const { return percentage_; }

 private:
  std::vector<NodeId> members_;
  std::vector<char> flags_;
  double threshold_ = 0.0;
  std::optional<double> percentage_;
};

struct TargetRule {
  enum class Mode { kAbsolute, kPercentile };
  Mode mode = Mode::kPercentile;
  double value = 25.0;  // L, or L-perc in (0, 100]

  static TargetRule Absolute(double threshold) {
    return {Mode::kAbsolute, threshold};
  }
  static TargetRule Percentile(double percent) {
    return {Mode::kPercentile, percent};
  }
};

// { v | l(v) >= L }. In percentile mode L is the value of the
// ceil(perc/100 * n)-th largest weight, so every node tied at the cut is
// kept. Throws DomainError for an empty result or a bad percentage.
TargetSet SelectTargets(std::span<const double> node_weights,
                        const TargetRule& rule);

// "n m" header, then m lines "u v b", then n lines "v l"; original ids and
// 17 significant digits.
void WriteDiffusionGraph(const DiffusionGraph& dg, std::ostream& out);
DiffusionGraph ReadDiffusionGraph(std::istream& in);

// FNV-1a over the serialized graph and weights.
std::uint64_t DiffusionHash(const DiffusionGraph& dg);

}  // namespace dtim

#endif  // DTIM_DIFFUSION_HPP_
