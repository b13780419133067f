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

#include "dtim/lurker_rank.hpp"

#include <cmath>

#include "dtim/errors.hpp"

namespace dtim {

RankVector LurkerRank(const SocialGraph& g, const RankOptions& options) {
  const std::size_t n = g.node_count();
  if (n == 0) throw EmptyGraphError("LurkerRank on an empty graph");
  if (!(options.damping >= 0.0 && options.damping <= 1.0)) {
    throw DomainError("damping must lie in [0, 1]");
  }
  if (!(options.tolerance > 0.0)) {
    throw DomainError("tolerance must be positive");
  }
  if (options.max_iterations < 1) {
    throw DomainError("max_iterations must be at least 1");
  }

  std::vector<double> in_s(n), out_s(n);
  for (NodeId v = 0; v < n; ++v) {
    in_s[v] = static_cast<double>(g.in_degree(v)) + 1.0;
    out_s[v] = static_cast<double>(g.out_degree(v)) + 1.0;
  }
  // Leading factor of Lout: in(v) / sum of in(u) over out-neighbors.
  std::vector<double> out_factor(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    double denom = 0.0;
    for (NodeId u : g.out_neighbors(v)) denom += in_s[u];
    if (denom > 0.0) out_factor[v] = in_s[v] / denom;
  }

  const double d = options.damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);
  std::vector<double> current(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  std::vector<double> in_flow(n), out_flow(n);

  RankVector result;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    for (NodeId u = 0; u < n; ++u) {
      in_flow[u] = out_s[u] / in_s[u] * current[u];
      out_flow[u] = in_s[u] / out_s[u] * current[u];
    }
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double lin = 0.0;
      for (NodeId u : g.in_neighbors(v)) lin += in_flow[u];
      lin /= out_s[v];
      double lout = 0.0;
      for (NodeId u : g.out_neighbors(v)) lout += out_flow[u];
      lout *= out_factor[v];
      next[v] = d * lin * (1.0 + lout) + teleport;
      total += next[v];
    }
    double residual = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      next[v] /= total;
      residual += std::abs(next[v] - current[v]);
    }
    current.swap(next);
    result.iterations_used = iter;
    result.residual = residual;
    if (residual <= options.tolerance) {
      result.scores = std::move(current);
      return result;
    }
  }
  throw ConvergenceError(options.max_iterations, result.residual);
}

}  // namespace dtim
