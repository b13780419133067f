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

#ifndef DTIM_TESTS_SUPPORT_FIXTURES_HPP_
#define DTIM_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "dtim/diffusion.hpp"
#include "dtim/graph.hpp"

namespace dtim::testing {

// Random simple digraph with n nodes and up to m distinct edges.
inline SocialGraph RandomGraph(std::size_t n, std::size_t m,
                               std::mt19937_64& rng) {
  std::set<std::pair<NodeId, NodeId>> picked;
  const std::size_t max_edges = n * (n - 1);
  m = std::min(m, max_edges);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  while (picked.size() < m) {
    NodeId u = node(rng), v = node(rng);
    if (u != v) picked.emplace(u, v);
  }
  std::vector<Edge> edges;
  for (auto [u, v] : picked) edges.push_back({u, v});
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return SocialGraph::FromEdges(n, std::move(edges), std::move(ids));
}

inline SocialGraph GraphFromEdges(std::size_t n, std::vector<Edge> edges) {
  std::vector<std::uint64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = i;
  return SocialGraph::FromEdges(n, std::move(edges), std::move(ids));
}

// Random admissible weights: every column sums to a random total in
// [min_total, 1].
inline DiffusionGraph RandomWeights(SocialGraph g, std::mt19937_64& rng,
                                    double min_total = 0.3) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> ell(g.node_count());
  for (auto& x : ell) x = unit(rng);
  std::vector<double> b(g.edge_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto ids = g.in_edge_ids(v);
    if (ids.empty()) continue;
    std::vector<double> raw(ids.size());
    double sum = 0.0;
    for (auto& r : raw) {
      r = 0.05 + unit(rng);
      sum += r;
    }
    const double total = min_total + (1.0 - min_total) * unit(rng);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      b[ids[i]] = raw[i] / sum * total * (1.0 - 1e-15);
    }
  }
  return DiffusionGraph(std::move(g), std::move(ell), std::move(b));
}

inline DiffusionGraph WithWeights(const SocialGraph& g,
                                  std::vector<double> ell,
                                  std::vector<std::tuple<NodeId, NodeId, double>>
                                      weights) {
  std::vector<double> b(g.edge_count(), 0.0);
  for (auto [u, v, w] : weights) b[*g.find_edge(u, v)] = w;
  return DiffusionGraph(g, std::move(ell), std::move(b));
}

inline TargetSet AllTargets(std::size_t n) {
  std::vector<NodeId> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<NodeId>(i);
  return TargetSet(n, std::move(all), 0.0, std::nullopt);
}

inline TargetSet TargetsOf(std::size_t n, std::vector<NodeId> members) {
  return TargetSet(n, std::move(members), 0.0, std::nullopt);
}

// Expected capital by enumerating every live-edge world independently of
// the library: each node keeps in-edge i with probability b_i or none with
// the residual. Targets activated (excluding seeds unless include_seeds)
// contribute l(v).
inline double BruteCapital(const DiffusionGraph& dg,
                           const std::vector<NodeId>& seeds,
                           const TargetSet& targets, bool include_seeds) {
  const SocialGraph& g = dg.graph();
  const std::size_t n = g.node_count();
  std::vector<char> is_seed(n, 0);
  for (NodeId s : seeds) is_seed[s] = 1;
  std::vector<int> choice(n, -1);  // -1 = no live in-edge
  double total = 0.0;
  std::function<void(NodeId, double)> rec = [&](NodeId v, double prob) {
    if (prob == 0.0) return;
    if (v == n) {
      // Active set: seeds plus everything whose live parent chain hits a seed.
      std::vector<char> active(n, 0);
      for (NodeId s : seeds) active[s] = 1;
      bool changed = true;
      while (changed) {
        changed = false;
        for (NodeId x = 0; x < n; ++x) {
          if (active[x] || choice[x] < 0) continue;
          if (active[g.in_neighbors(x)[choice[x]]]) {
            active[x] = 1;
            changed = true;
          }
        }
      }
      double cap = 0.0;
      for (NodeId t : targets.members()) {
        if (active[t] && (include_seeds || !is_seed[t])) {
          cap += dg.node_weight(t);
        }
      }
      total += prob * cap;
      return;
    }
    auto w = dg.in_weights(v);
    double rest = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      choice[v] = static_cast<int>(i);
      rec(v + 1, prob * w[i]);
      rest -= w[i];
    }
    choice[v] = -1;
    rec(v + 1, prob * std::max(0.0, rest));
  };
  rec(0, 1.0);
  return total;
}

}  // namespace dtim::testing

#endif  // DTIM_TESTS_SUPPORT_FIXTURES_HPP_
