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

#ifndef DTIM_GRAPH_HPP_
#define DTIM_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtim {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// A directed edge (source, destination). Under the diffusion semantics used
// throughout the library, (u, v) means that v receives information from u.
struct Edge {
  NodeId source;
  NodeId destination;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable directed graph with dense node ids 0..n-1 and CSR adjacency in
// both directions. Edge ids index the edge list sorted by (source,
// destination), which coincides with the out-adjacency layout. All adjacency
// sequences are sorted ascending.
class SocialGraph {
 public:
  SocialGraph() = default;

  // Builds a graph from already-clean edges (no self-loops, no duplicates,
  // endpoints < node_count). Throws DomainError otherwise. `original_ids`
  // maps dense ids back to the ids used in the input; identity if empty.
  static SocialGraph FromEdges(std::size_t node_count, std::vector<Edge> edges,
                               std::vector<std::uint64_t> original_ids = {});

  std::size_t node_count() const { return original_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const NodeId> out_neighbors(NodeId v) const {
    return {out_targets_.data() + out_offsets_[v],
            out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }
  // Edge ids aligned with in_neighbors(v).
  std::span<const EdgeId> in_edge_ids(NodeId v) const {
    return {in_edge_ids_.data() + in_offsets_[v],
            in_edge_ids_.data() + in_offsets_[v + 1]};
  }
  // Offset of v's first in-slot; in-slots of all nodes form one array of
  // length edge_count().
  std::size_t in_slot(NodeId v) const { return in_offsets_[v]; }
  // Edge ids of v's out-edges form a contiguous range.
  EdgeId first_out_edge(NodeId v) const { return out_offsets_[v]; }

  std::size_t out_degree(NodeId v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  std::size_t in_degree(NodeId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  std::optional<EdgeId> find_edge(NodeId source, NodeId destination) const;

  std::uint64_t original_id(NodeId v) const { return original_ids_[v]; }
  std::span<const std::uint64_t> original_ids() const { return original_ids_; }
  std::optional<NodeId> find_node(std::uint64_t original_id) const;

  // 64-bit FNV-1a digest of the canonical serialization.
  std::uint64_t content_hash() const;

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) {
    return a.original_ids_ == b.original_ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::uint64_t> original_ids_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<EdgeId> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<EdgeId> in_edge_ids_;
};

struct EdgeListLoad {
  SocialGraph graph;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

// Parses "source destination" records separated by whitespace or a comma.
// Blank lines and lines starting with '#' are skipped. Original ids are
// remapped to 0..n-1 in ascending order of the original id.
EdgeListLoad LoadEdgeList(std::istream& in);
EdgeListLoad LoadEdgeListFile(const std::string& path);

// Writes one "source destination" line per edge using original ids.
void WriteEdgeList(const SocialGraph& g, std::ostream& out);
std::string SerializeEdgeList(const SocialGraph& g);

struct CentralityStats {
  std::vector<std::size_t> outdegree;
  std::vector<double> betweenness;
  std::vector<std::size_t> coreness;
};

// Exact outdegree, directed betweenness (Brandes accumulation over ordered
// pairs, unnormalized) and coreness of the undirected projection.
CentralityStats ComputeCentrality(const SocialGraph& g);

// 64-bit FNV-1a over a byte range.
std::uint64_t Fnv1a64(std::string_view bytes,
                      std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace dtim

#endif  // DTIM_GRAPH_HPP_
