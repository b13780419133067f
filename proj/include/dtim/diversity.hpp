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

#ifndef DTIM_DIVERSITY_HPP_
#define DTIM_DIVERSITY_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dtim/graph.hpp"

namespace dtim {

// Partially unfolded target-specific diffusion DAG G_t = (V_t, E_t) rooted
// in a target. The boundary B_t holds the members that still have at least
// one incoming graph edge outside E_t; each member tracks how many such
// external in-edges it has and how many E_t edges leave it.
class UnfoldState {
 public:
  UnfoldState(const SocialGraph& graph, NodeId target);

  NodeId target() const { return target_; }
  const SocialGraph& graph() const { return *graph_; }

  bool contains(NodeId v) const { return members_.contains(v); }
  bool has_edge(NodeId u, NodeId v) const;
  bool is_boundary(NodeId v) const;

  // |N^in(v) \ {u : (u, v) in E_t}|; the plain in-degree for non-members.
  std::size_t external_indegree(NodeId v) const;
  // Number of E_t edges leaving v.
  std::size_t internal_outdegree(NodeId v) const;

  std::size_t node_count() const { return members_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t boundary_size() const { return boundary_size_; }
  std::size_t boundary_sum() const { return boundary_sum_; }

  // Sorted member / boundary ids.
  std::vector<NodeId> nodes() const;
  std::vector<NodeId> boundary() const;

  // Extends G_t with the graph edge (u, v); v must already be a member.
  // Adding an edge twice is a no-op.
  void AddEdge(NodeId u, NodeId v);

 private:
  struct Member {
    std::size_t external = 0;
    std::size_t internal_out = 0;
  };

  void Track(std::size_t old_external, std::size_t new_external);
  static std::uint64_t Key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }

  const SocialGraph* graph_;
  NodeId target_;
  std::unordered_map<NodeId, Member> members_;
  std::unordered_set<std::uint64_t> edges_;
  std::size_t boundary_size_ = 0;
  std::size_t boundary_sum_ = 0;
};

// delta_t: mean external in-degree over the boundary. Throws DomainError on
// an empty boundary.
double BoundaryDiversity(const UnfoldState& state);

// delta_t^{+u} = (|B| delta_t + |N^in_ext(u)|) / (|B| + 1), the boundary
// diversity once u joins the boundary. u must not be a boundary node.
double IncrementalBoundaryDiversity(const UnfoldState& state, NodeId u);

// Local diversity of u w.r.t. the current unfolding:
//   |B| / (1 + |B|) * (1 + |N^in_ext(u)| / sum_{v in B} |N^in_ext(v)|)
// Throws DomainError when the boundary sum is zero.
double LocalDiversity(const UnfoldState& state, NodeId u);

// Global diversity on a fully unfolded state:
//   |N^in_ext(v)| / |B| * ln(1 + |N^out_int(v)| / |B|)  for v in B,
//   0 for every other node.
double GlobalDiversity(const UnfoldState& state, NodeId v);

// Divides by the maximum; an all-zero (or empty) input stays all-zero.
std::vector<double> MaxNormalize(std::span<const double> raw);

// Raw and max-normalized diversity per (node, target) pair. Normalization is
// per target.
class DiversityTable {
 public:
  struct Entry {
    NodeId node;
    NodeId target;
    double raw;
    double normalized;
  };

  // Records raw values for one target, normalizes them, and returns the
  // normalized values in input order.
  std::vector<double> AddTarget(NodeId target, std::span<const NodeId> nodes,
                                std::span<const double> raw);

  std::span<const Entry> entries() const { return entries_; }
  double normalized(NodeId node, NodeId target) const;

  // "node-id target-id raw normalized" lines with original ids.
  void Write(const SocialGraph& g, std::ostream& out) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// D(S) = sum over seeds s and targets t of div_t(s) using normalized values.
double SetDiversity(const DiversityTable& table, std::span<const NodeId> seeds);

}  // namespace dtim

#endif  // DTIM_DIVERSITY_HPP_
