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

#include "dtim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "dtim/errors.hpp"
#include "dtim/format.hpp"

namespace dtim {

namespace {

constexpr double kAdmissibilitySlack = 1e-12;

// Largest integer e with 10^e <= x, for x > 0.
int DecimalExponent(double x) {
  int e = static_cast<int>(std::floor(std::log10(x)));
  if (std::pow(10.0, e + 1) <= x) ++e;
  if (std::pow(10.0, e) > x) --e;
  return e;
}

}  // namespace

DiffusionGraph::DiffusionGraph(SocialGraph graph,
                               std::vector<double> node_weight,
                               std::vector<double> edge_weight)
    : graph_(std::move(graph)),
      node_weight_(std::move(node_weight)),
      edge_weight_(std::move(edge_weight)) {
  const std::size_t n = graph_.node_count();
  const std::size_t m = graph_.edge_count();
  if (node_weight_.size() != n) {
    throw DomainError("node weight count does not match node count");
  }
  if (edge_weight_.size() != m) {
    throw DomainError("edge weight count does not match edge count");
  }
  for (double l : node_weight_) {
    if (!(l >= 0.0 && l <= 1.0)) throw DomainError("node weight outside [0, 1]");
  }
  for (double b : edge_weight_) {
    if (!(b >= 0.0 && b <= 1.0)) throw DomainError("edge weight outside [0, 1]");
  }
  in_weight_.resize(m);
  in_sum_.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    auto ids = graph_.in_edge_ids(v);
    const std::size_t base = graph_.in_slot(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      in_weight_[base + i] = edge_weight_[ids[i]];
      sum += edge_weight_[ids[i]];
    }
    if (sum > 1.0 + kAdmissibilitySlack) throw AdmissibilityError(v, sum);
    in_sum_[v] = sum;
  }
}

NodeWeights ComputeNodeWeights(std::span<const double> ranks,
                               const NodeWeightOptions& options) {
  if (ranks.empty()) throw DomainError("empty rank vector");
  const auto [min_it, max_it] = std::minmax_element(ranks.begin(), ranks.end());
  if (!(*min_it > 0.0)) throw DomainError("rank scores must be positive");

  NodeWeights out;
  out.scale = std::pow(10.0, DecimalExponent(*min_it));
  const double min_r = *min_it / out.scale;
  const double max_r = *max_it / out.scale;
  out.epsilon_r = options.epsilon_r.value_or(
      std::pow(10.0, DecimalExponent(max_r)) * 1e-2);
  if (!(out.epsilon_r > 0.0)) throw DomainError("epsilon_r must be positive");
  out.values.assign(ranks.size(), 0.0);
  if (max_r == min_r) {
    out.degenerate = true;
    return out;
  }
  const double denom = (max_r - min_r) + out.epsilon_r;
  for (std::size_t v = 0; v < ranks.size(); ++v) {
    out.values[v] = (ranks[v] / out.scale - min_r) / denom;
  }
  return out;
}

std::vector<double> ComputeEdgeWeights(const SocialGraph& g,
                                       std::span<const double> ranks,
                                       std::span<const double> node_weights) {
  const std::size_t n = g.node_count();
  if (ranks.size() != n || node_weights.size() != n) {
    throw DomainError("rank/weight vectors do not match the graph");
  }
  std::vector<double> share(n);
  for (NodeId u = 0; u < n; ++u) {
    share[u] = (static_cast<double>(g.out_degree(u)) + 1.0) /
               (static_cast<double>(g.in_degree(u)) + 1.0) * ranks[u];
  }
  std::vector<double> b(g.edge_count(), 0.0);
  for (NodeId v = 0; v < n; ++v) {
    auto sources = g.in_neighbors(v);
    if (sources.empty()) continue;
    double denom = 0.0;
    for (NodeId u : sources) denom += share[u];
    const double damp = std::exp(node_weights[v] - 1.0);
    auto ids = g.in_edge_ids(v);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      b[ids[i]] = share[sources[i]] / denom * damp;
    }
  }
  return b;
}

DiffusionBuild BuildDiffusionGraph(const SocialGraph& g,
                                   const RankOptions& rank_options,
                                   const NodeWeightOptions& weight_options) {
  RankVector ranks = LurkerRank(g, rank_options);
  NodeWeights weights = ComputeNodeWeights(ranks.scores, weight_options);
  std::vector<double> b = ComputeEdgeWeights(g, ranks.scores, weights.values);
  DiffusionGraph dg(g, weights.values, std::move(b));
  return {std::move(dg), std::move(ranks), std::move(weights)};
}

TargetSet::TargetSet(std::size_t node_count, std::vector<NodeId> members,
                     double threshold, std::optional<double> percentage)
    : members_(std::move(members)),
      flags_(node_count, 0),
      threshold_(threshold),
      percentage_(percentage) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (NodeId v : members_) {
    if (v >= node_count) throw DomainError("target id out of range");
    flags_[v] = 1;
  }
}

TargetSet SelectTargets(std::span<const double> node_weights,
                        const TargetRule& rule) {
  const std::size_t n = node_weights.size();
  double threshold = rule.value;
  std::optional<double> percentage;
  if (rule.mode == TargetRule::Mode::kPercentile) {
    if (!(rule.value > 0.0 && rule.value <= 100.0)) {
      throw DomainError("L-perc must lie in (0, 100]");
    }
    if (n == 0) throw DomainError("no nodes to select targets from");
    percentage = rule.value;
    const double wanted = rule.value / 100.0 * static_cast<double>(n);
    auto count = static_cast<std::size_t>(std::ceil(wanted - 1e-9));
    count = std::clamp<std::size_t>(count, 1, n);
    std::vector<double> sorted(node_weights.begin(), node_weights.end());
    std::nth_element(sorted.begin(), sorted.begin() + (count - 1), sorted.end(),
                     std::greater<>());
    threshold = sorted[count - 1];
  }
  std::vector<NodeId> members;
  for (NodeId v = 0; v < n; ++v) {
    if (node_weights[v] >= threshold) members.push_back(v);
  }
  if (members.empty()) throw DomainError("target set is empty");
  return TargetSet(n, std::move(members), threshold, percentage);
}

void WriteDiffusionGraph(const DiffusionGraph& dg, std::ostream& out) {
  const SocialGraph& g = dg.graph();
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << g.original_id(edge.source) << ' '
        << g.original_id(edge.destination) << ' '
        << FormatDouble(dg.edge_weight(e)) << '\n';
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.original_id(v) << ' ' << FormatDouble(dg.node_weight(v)) << '\n';
  }
}

DiffusionGraph ReadDiffusionGraph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      return std::istringstream(line);
    }
    throw ParseError(line_no + 1, "unexpected end of diffusion graph");
  };

  std::size_t n = 0, m = 0;
  if (!(next_line() >> n >> m)) throw ParseError(line_no, "bad header");
  struct RawEdge {
    std::uint64_t u, v;
    double b;
  };
  std::vector<RawEdge> raw(m);
  for (auto& e : raw) {
    if (!(next_line() >> e.u >> e.v >> e.b)) {
      throw ParseError(line_no, "expected 'u v weight'");
    }
  }
  std::vector<std::uint64_t> ids(n);
  std::vector<double> ell(n);
  std::unordered_map<std::uint64_t, NodeId> dense;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(next_line() >> ids[i] >> ell[i])) {
      throw ParseError(line_no, "expected 'v weight'");
    }
    if (!dense.emplace(ids[i], static_cast<NodeId>(i)).second) {
      throw ParseError(line_no, "duplicate node id");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (const auto& e : raw) {
    auto su = dense.find(e.u);
    auto sv = dense.find(e.v);
    if (su == dense.end() || sv == dense.end()) {
      throw DomainError("edge references an unlisted node");
    }
    edges.push_back({su->second, sv->second});
  }
  SocialGraph g = SocialGraph::FromEdges(n, edges, ids);
  std::vector<double> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    b[*g.find_edge(edges[i].source, edges[i].destination)] = raw[i].b;
  }
  return DiffusionGraph(std::move(g), std::move(ell), std::move(b));
}

std::uint64_t DiffusionHash(const DiffusionGraph& dg) {
  std::ostringstream text;
  WriteDiffusionGraph(dg, text);
  return Fnv1a64(text.str());
}

}  // namespace dtim
