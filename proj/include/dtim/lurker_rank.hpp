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

#ifndef DTIM_LURKER_RANK_HPP_
#define DTIM_LURKER_RANK_HPP_

#include <vector>

#include "dtim/graph.hpp"

namespace dtim {

struct RankOptions {
  double damping = 0.85;
  double tolerance = 1e-9;
  int max_iterations = 200;
};

struct RankVector {
  std::vector<double> scores;  // L1-normalized, strictly positive
  int iterations_used = 0;
  double residual = 0.0;  // L1 change of the last sweep
};

// In-out-neighbors-driven LurkerRank. Edge (u, v) means v consumes
// information produced by u. Each sweep computes, from the previous iterate,
//
//   LR(v) = d * Lin(v) * (1 + Lout(v)) + (1 - d) / n
//   Lin(v)  = 1/out(v) * sum_{u in in(v)} out(u)/in(u) * LR(u)
//   Lout(v) = in(v) / sum_{u in out(v)} in(u)
//             * sum_{u in out(v)} in(u)/out(u) * LR(u)
//
// with add-one smoothed in/out counts, then rescales to unit L1 norm.
// Throws EmptyGraphError on an empty graph, DomainError on bad options and
// ConvergenceError when max_iterations sweeps leave residual > tolerance.
RankVector LurkerRank(const SocialGraph& g, const RankOptions& options = {});

}  // namespace dtim

#endif  // DTIM_LURKER_RANK_HPP_
