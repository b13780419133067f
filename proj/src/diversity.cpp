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

#include "dtim/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "dtim/errors.hpp"
#include "dtim/format.hpp"

namespace dtim {

UnfoldState::UnfoldState(const SocialGraph& graph, NodeId target)
    : graph_(&graph), target_(target) {
  if (target >= graph.node_count()) throw DomainError("target out of range");
  const std::size_t ext = graph.in_degree(target);
  members_.emplace(target, Member{ext, 0});
  Track(0, ext);
}

bool UnfoldState::has_edge(NodeId u, NodeId v) const {
  return edges_.contains(Key(u, v));
}

bool UnfoldState::is_boundary(NodeId v) const {
  auto it = members_.find(v);
  return it != members_.end() && it->second.external > 0;
}

std::size_t UnfoldState::external_indegree(NodeId v) const {
  auto it = members_.find(v);
  return it == members_.end() ? graph_->in_degree(v) : it->second.external;
}

std::size_t UnfoldState::internal_outdegree(NodeId v) const {
  auto it = members_.find(v);
  return it == members_.end() ? 0 : it->second.internal_out;
}

std::vector<NodeId> UnfoldState::nodes() const {
  std::vector<NodeId> out;
  out.reserve(members_.size());
  for (const auto& [v, m] : members_) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> UnfoldState::boundary() const {
  std::vector<NodeId> out;
  for (const auto& [v, m] : members_) {
    if (m.external > 0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void UnfoldState::Track(std::size_t old_external, std::size_t new_external) {
  if (old_external > 0) --boundary_size_;
  if (new_external > 0) ++boundary_size_;
  boundary_sum_ = boundary_sum_ - old_external + new_external;
}

void UnfoldState::AddEdge(NodeId u, NodeId v) {
  auto head = members_.find(v);
  if (head == members_.end()) {
    throw DomainError("edge head is not part of the unfolding");
  }
  if (!graph_->find_edge(u, v)) throw DomainError("edge not in graph");
  if (!edges_.insert(Key(u, v)).second) return;

  Member& mv = head->second;
  Track(mv.external, mv.external - 1);
  --mv.external;

  auto [tail, inserted] = members_.try_emplace(u);
  if (inserted) {
    tail->second.external = graph_->in_degree(u);
    Track(0, tail->second.external);
  }
  ++tail->second.internal_out;
}

double BoundaryDiversity(const UnfoldState& state) {
  if (state.boundary_size() == 0) throw DomainError("empty boundary set");
  return static_cast<double>(state.boundary_sum()) /
         static_cast<double>(state.boundary_size());
}

double IncrementalBoundaryDiversity(const UnfoldState& state, NodeId u) {
  if (state.is_boundary(u)) throw DomainError("node already on the boundary");
  const double size = static_cast<double>(state.boundary_size());
  return (static_cast<double>(state.boundary_sum()) +
          static_cast<double>(state.external_indegree(u))) /
         (size + 1.0);
}

double LocalDiversity(const UnfoldState& state, NodeId u) {
  if (state.boundary_sum() == 0) {
    throw DomainError("boundary has no external in-edges");
  }
  const double size = static_cast<double>(state.boundary_size());
  return size / (1.0 + size) *
         (1.0 + static_cast<double>(state.external_indegree(u)) /
                    static_cast<double>(state.boundary_sum()));
}

double GlobalDiversity(const UnfoldState& state, NodeId v) {
  if (!state.is_boundary(v)) return 0.0;
  const double size = static_cast<double>(state.boundary_size());
  return static_cast<double>(state.external_indegree(v)) / size *
         std::log1p(static_cast<double>(state.internal_outdegree(v)) / size);
}

std::vector<double> MaxNormalize(std::span<const double> raw) {
  std::vector<double> out(raw.begin(), raw.end());
  double top = 0.0;
  for (double x : raw) top = std::max(top, x);
  if (top > 0.0) {
    for (double& x : out) x /= top;
  }
  return out;
}

namespace {
std::uint64_t PairKey(NodeId node, NodeId target) {
  return (static_cast<std::uint64_t>(node) << 32) | target;
}
}  // namespace

std::vector<double> DiversityTable::AddTarget(NodeId target,
                                              std::span<const NodeId> nodes,
                                              std::span<const double> raw) {
  if (nodes.size() != raw.size()) throw DomainError("size mismatch");
  std::vector<double> normalized = MaxNormalize(raw);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::uint64_t key = PairKey(nodes[i], target);
    auto [it, inserted] = index_.try_emplace(key, entries_.size());
    if (inserted) {
      entries_.push_back({nodes[i], target, raw[i], normalized[i]});
    } else {
      entries_[it->second].raw = raw[i];
      entries_[it->second].normalized = normalized[i];
    }
  }
  return normalized;
}

double DiversityTable::normalized(NodeId node, NodeId target) const {
  auto it = index_.find(PairKey(node, target));
  return it == index_.end() ? 0.0 : entries_[it->second].normalized;
}

void DiversityTable::Write(const SocialGraph& g, std::ostream& out) const {
  for (const Entry& e : entries_) {
    out << g.original_id(e.node) << ' ' << g.original_id(e.target) << ' '
        << FormatDouble(e.raw) << ' ' << FormatDouble(e.normalized) << '\n';
  }
}

double SetDiversity(const DiversityTable& table,
                    std::span<const NodeId> seeds) {
  std::vector<NodeId> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  double total = 0.0;
  for (const auto& e : table.entries()) {
    if (std::binary_search(sorted.begin(), sorted.end(), e.node)) {
      total += e.normalized;
    }
  }
  return total;
}

}  // namespace dtim
