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

#include "dtim/greedy.hpp"

#include <ostream>

#include "dtim/errors.hpp"
#include "dtim/format.hpp"
#include "dtim/parallel.hpp"

namespace dtim {

std::string ToString(DiversityVariant variant) {
  return variant == DiversityVariant::kLocal ? "local" : "global";
}

DiversityVariant ParseDiversityVariant(const std::string& text) {
  if (text == "local") return DiversityVariant::kLocal;
  if (text == "global") return DiversityVariant::kGlobal;
  throw DomainError("unknown diversity variant '" + text + "'");
}

std::string ToString(SelectionStatus status) {
  switch (status) {
    case SelectionStatus::kComplete:
      return "complete";
    case SelectionStatus::kTargetsExhausted:
      return "targets-exhausted";
    case SelectionStatus::kNoCandidates:
      return "no-candidates";
  }
  return "unknown";
}

std::vector<NodeId> SeedResult::nodes() const {
  std::vector<NodeId> out;
  out.reserve(seeds.size());
  for (const auto& s : seeds) out.push_back(s.node);
  return out;
}

void WriteSeedResult(const SeedResult& result, const SocialGraph& g,
                     std::ostream& out) {
  std::size_t rank = 1;
  for (const auto& s : result.seeds) {
    out << rank++ << ' ' << g.original_id(s.node) << ' '
        << FormatDouble(s.objective) << ' ' << FormatDouble(s.capital) << ' '
        << FormatDouble(s.diversity) << '\n';
  }
}

void NodeAccumulator::Reset(std::size_t n) {
  capital.assign(n, 0.0);
  diversity.assign(n, 0.0);
  influence.assign(n, 0.0);
  reached.assign(n, 0);
}

// Sparse per-target result, merged in target order so sums do not depend on
// how targets were spread over workers.
struct DtimSelector::Contribution {
  std::vector<NodeId> nodes;
  std::vector<double> capital;
  std::vector<double> influence;
  std::vector<double> diversity;
  // First iteration: raw and normalized diversity w.r.t. this target.
  std::vector<NodeId> dset_nodes;
  std::vector<double> dset_raw;
  std::vector<double> dset_normalized;
};

struct DtimSelector::Workspace {
  explicit Workspace(const DiffusionGraph& dg)
      : walker(dg),
        capital(dg.node_count(), 0.0),
        influence(dg.node_count(), 0.0),
        diversity(dg.node_count(), 0.0),
        dset(dg.node_count(), 0.0),
        seen(dg.node_count(), 0),
        has_dset(dg.node_count(), 0) {}

  BackwardWalker walker;
  std::vector<double> capital;
  std::vector<double> influence;
  std::vector<double> diversity;
  std::vector<double> dset;
  std::vector<char> seen;
  std::vector<char> has_dset;
  std::vector<NodeId> touched;
  std::vector<NodeId> dset_order;
};

DtimSelector::DtimSelector(const DiffusionGraph& dg, const TargetSet& targets,
                           SelectionConfig config)
    : dg_(&dg), targets_(&targets), config_(config) {
  if (config_.k < 1) throw DomainError("k must be at least 1");
  if (!(config_.alpha >= 0.0 && config_.alpha <= 1.0)) {
    throw DomainError("alpha must lie in [0, 1]");
  }
  if (!(config_.eta >= 0.0 && config_.eta <= 1.0)) {
    throw DomainError("eta must lie in [0, 1]");
  }
  if (targets.size() == 0) throw DomainError("empty target set");
  for (NodeId t : targets.members()) {
    if (t >= dg.node_count()) throw DomainError("target out of range");
  }
  in_seed_set_.assign(dg.node_count(), 0);
  acc_.Reset(dg.node_count());
}

void DtimSelector::WalkTarget(NodeId target, bool first, Workspace& ws,
                              Contribution& out) const {
  const double ell_t = dg_->node_weight(target);
  const bool local = config_.variant == DiversityVariant::kLocal;
  ws.touched.clear();
  ws.dset_order.clear();
  auto touch = [&ws](NodeId u) {
    if (!ws.seen[u]) {
      ws.seen[u] = 1;
      ws.touched.push_back(u);
    }
  };

  if (first) {
    UnfoldState state(dg_->graph(), target);
    ws.walker.Walk(target, in_seed_set_, config_.eta,
                   [&](NodeId u, NodeId v, double pp) {
                     touch(u);
                     ws.capital[u] += pp * ell_t;
                     ws.influence[u] += pp;
                     // A zero boundary sum leaves the previous value in place.
                     if (local && state.boundary_sum() > 0) {
                       if (!ws.has_dset[u]) {
                         ws.has_dset[u] = 1;
                         ws.dset_order.push_back(u);
                       }
                       // Source nodes carry no diversity.
                       ws.dset[u] = dg_->graph().in_degree(u) == 0
                                        ? 0.0
                                        : LocalDiversity(state, u);
                     }
                     state.AddEdge(u, v);
                   });
    if (local) {
      std::sort(ws.dset_order.begin(), ws.dset_order.end());
      out.dset_nodes = ws.dset_order;
      for (NodeId u : out.dset_nodes) {
        out.dset_raw.push_back(ws.dset[u]);
        ws.dset[u] = 0.0;
        ws.has_dset[u] = 0;
      }
    } else {
      out.dset_nodes = state.nodes();
      for (NodeId v : out.dset_nodes) {
        out.dset_raw.push_back(GlobalDiversity(state, v));
      }
    }
    out.dset_normalized = MaxNormalize(out.dset_raw);
    for (std::size_t i = 0; i < out.dset_nodes.size(); ++i) {
      const NodeId v = out.dset_nodes[i];
      ws.diversity[v] += ws.influence[v] * out.dset_normalized[i];
    }
  } else {
    ws.walker.Walk(target, in_seed_set_, config_.eta,
                   [&](NodeId u, NodeId, double pp) {
                     touch(u);
                     ws.capital[u] += pp * ell_t;
                     ws.diversity[u] += pp * table_.normalized(u, target);
                   });
  }

  std::sort(ws.touched.begin(), ws.touched.end());
  for (NodeId u : ws.touched) {
    out.nodes.push_back(u);
    out.capital.push_back(ws.capital[u]);
    out.influence.push_back(ws.influence[u]);
    out.diversity.push_back(ws.diversity[u]);
    ws.capital[u] = ws.influence[u] = ws.diversity[u] = 0.0;
    ws.seen[u] = 0;
  }
}

std::optional<SeedRecord> DtimSelector::Step() {
  if (static_cast<int>(seed_order_.size()) >= config_.k) return std::nullopt;
  std::vector<NodeId> open;
  for (NodeId t : targets_->members()) {
    if (!in_seed_set_[t]) open.push_back(t);
  }
  if (open.empty()) {
    status_ = SelectionStatus::kTargetsExhausted;
    return std::nullopt;
  }

  const bool first = seed_order_.empty();
  std::vector<Contribution> parts(open.size());
  ParallelFor(open.size(), config_.threads,
              [&](std::size_t begin, std::size_t end, int) {
                Workspace ws(*dg_);
                for (std::size_t i = begin; i < end; ++i) {
                  WalkTarget(open[i], first, ws, parts[i]);
                }
              });

  acc_.Reset(dg_->node_count());
  for (std::size_t i = 0; i < open.size(); ++i) {
    const Contribution& part = parts[i];
    for (std::size_t j = 0; j < part.nodes.size(); ++j) {
      const NodeId u = part.nodes[j];
      acc_.reached[u] = 1;
      acc_.capital[u] += part.capital[j];
      acc_.influence[u] += part.influence[j];
      acc_.diversity[u] += part.diversity[j];
    }
    if (first) table_.AddTarget(open[i], part.dset_nodes, part.dset_raw);
  }

  const double alpha = config_.alpha;
  std::optional<SeedRecord> best;
  for (NodeId u = 0; u < dg_->node_count(); ++u) {
    if (!acc_.reached[u] || in_seed_set_[u]) continue;
    const double objective =
        alpha * acc_.capital[u] + (1.0 - alpha) * acc_.diversity[u];
    if (!best || objective > best->objective) {
      best = SeedRecord{u, objective, acc_.capital[u], acc_.diversity[u]};
    }
  }
  if (!best) {
    status_ = SelectionStatus::kNoCandidates;
    return std::nullopt;
  }
  in_seed_set_[best->node] = 1;
  seed_order_.push_back(best->node);
  records_.push_back(*best);
  return best;
}

SeedResult DtimSelector::Run() {
  while (static_cast<int>(seed_order_.size()) < config_.k) {
    if (!Step()) break;
  }
  SeedResult result;
  result.seeds = records_;
  result.status = static_cast<int>(records_.size()) == config_.k
                      ? SelectionStatus::kComplete
                      : status_;
  return result;
}

SeedResult DtimSelect(const DiffusionGraph& dg, const TargetSet& targets,
                      const SelectionConfig& config) {
  DtimSelector selector(dg, targets, config);
  return selector.Run();
}

}  // namespace dtim
