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

#ifndef DTIM_GREEDY_HPP_
#define DTIM_GREEDY_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dtim/diffusion.hpp"
#include "dtim/diversity.hpp"

namespace dtim {

enum class DiversityVariant { kLocal, kGlobal };

std::string ToString(DiversityVariant variant);
DiversityVariant ParseDiversityVariant(const std::string& text);

struct SelectionConfig {
  int k = 10;
  double alpha = 0.5;
  // Paths whose probability drops below eta are not extended. eta = 0
  // enumerates every simple path with nonzero probability.
  double eta = 1e-4;
  DiversityVariant variant = DiversityVariant::kGlobal;
  int threads = 1;
};

struct SeedRecord {
  NodeId node;
  double objective;  // alpha * capital + (1 - alpha) * diversity
  double capital;
  double diversity;
};

enum class SelectionStatus { kComplete, kTargetsExhausted, kNoCandidates };

std::string ToString(SelectionStatus status);

struct SeedResult {
  std::vector<SeedRecord> seeds;
  SelectionStatus status = SelectionStatus::kComplete;

  std::vector<NodeId> nodes() const;
};

// "rank node-id DIC C D" lines, original ids, 17 significant digits.
void WriteSeedResult(const SeedResult& result, const SocialGraph& g,
                     std::ostream& out);

// Depth-first enumeration of simple backward paths ending at `target`.
// Starting from the path <target> with probability 1, each in-neighbor u of
// the path's last node v that is neither excluded nor already on the path
// extends it with probability pp * b(u, v). Extensions with pp < eta, or
// pp == 0, are dropped; every surviving one calls visit(u, v, pp) before
// the walk descends from u. In-neighbors are tried in ascending id order.
class BackwardWalker {
 public:
  explicit BackwardWalker(const DiffusionGraph& dg)
      : dg_(&dg), on_path_(dg.node_count(), 0) {}

  template <typename Visit>
  void Walk(NodeId target, std::span<const char> excluded, double eta,
            Visit&& visit);

 private:
  struct Frame {
    NodeId node;
    std::size_t next;
    double pp;
  };

  const DiffusionGraph* dg_;
  std::vector<char> on_path_;
  std::vector<Frame> stack_;
};

template <typename Visit>
void BackwardWalker::Walk(NodeId target, std::span<const char> excluded,
                          double eta, Visit&& visit) {
  const SocialGraph& g = dg_->graph();
  stack_.clear();
  stack_.push_back({target, 0, 1.0});
  on_path_[target] = 1;
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    const NodeId v = top.node;
    auto sources = g.in_neighbors(v);
    auto weights = dg_->in_weights(v);
    bool descended = false;
    while (top.next < sources.size()) {
      const std::size_t i = top.next++;
      const NodeId u = sources[i];
      if (on_path_[u] || (!excluded.empty() && excluded[u])) continue;
      const double pp = top.pp * weights[i];
      if (pp < eta || pp <= 0.0) continue;
      visit(u, v, pp);
      on_path_[u] = 1;
      stack_.push_back({u, 0, pp});  // invalidates `top`
      descended = true;
      break;
    }
    if (!descended) {
      on_path_[v] = 0;
      stack_.pop_back();
    }
  }
}

// Per-node quantities accumulated during one main-loop iteration.
struct NodeAccumulator {
  std::vector<double> capital;
  std::vector<double> diversity;
  // Path influence summed over targets (first iteration only).
  std::vector<double> influence;
  std::vector<char> reached;

  void Reset(std::size_t n);
};

// Greedy diversity-sensitive targeted seed selection by backward simple-path
// enumeration. Diversity is computed during the first iteration only (local
// variant: on every visit against the partial unfolding, last visit wins;
// global variant: on the fully unfolded subgraph) and max-normalized per
// target. Later iterations reuse it, weighting it by path probability.
class DtimSelector {
 public:
  DtimSelector(const DiffusionGraph& dg, const TargetSet& targets,
               SelectionConfig config);

  // Runs one main-loop iteration and appends the best node to the seed set.
  // Returns nullopt (and sets status()) when no seed can be added.
  std::optional<SeedRecord> Step();

  // Runs until k seeds are chosen or selection stops early.
  SeedResult Run();

  std::span<const NodeId> seeds() const { return seed_order_; }
  SelectionStatus status() const { return status_; }
  const NodeAccumulator& accumulator() const { return acc_; }
  const DiversityTable& diversity_table() const { return table_; }
  const SelectionConfig& config() const { return config_; }

 private:
  struct Contribution;
  struct Workspace;
  void WalkTarget(NodeId target, bool first, Workspace& ws,
                  Contribution& out) const;

  const DiffusionGraph* dg_;
  const TargetSet* targets_;
  SelectionConfig config_;
  std::vector<char> in_seed_set_;
  std::vector<NodeId> seed_order_;
  std::vector<SeedRecord> records_;
  NodeAccumulator acc_;
  DiversityTable table_;
  SelectionStatus status_ = SelectionStatus::kComplete;
};

SeedResult DtimSelect(const DiffusionGraph& dg, const TargetSet& targets,
                      const SelectionConfig& config);

}  // namespace dtim

#endif  // DTIM_GREEDY_HPP_
