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

#ifndef DTIM_SIMULATOR_HPP_
#define DTIM_SIMULATOR_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dtim/diffusion.hpp"

namespace dtim {

struct SimulationOptions {
  std::size_t runs = 10000;
  std::uint64_t rng_seed = 0;
  int threads = 1;
};

struct SimulationReport {
  double capital_estimate = 0.0;
  double capital_std_error = 0.0;  // sample std. deviation / sqrt(runs)
  std::size_t runs = 0;
  std::vector<double> activation_probability;
  std::uint64_t rng_seed = 0;
};

// Monte Carlo Linear Threshold cascades from `seeds`. Thresholds are drawn
// uniformly from [0, 1) on a node's first contact in each run, and a node
// activates once the weight received from active in-neighbors reaches its
// threshold. Each run accrues l(v) for every activated target that is not a
// seed. Run r draws from Philox stream r of rng_seed, so the report is
// identical for any thread count.
SimulationReport EstimateCapital(const DiffusionGraph& dg,
                                 std::span<const NodeId> seeds,
                                 const TargetSet& targets,
                                 const SimulationOptions& options = {});

struct ExactOptions {
  // Count activated seeds that are targets (the RR-set coverage identity
  // uses this convention); the capital proper excludes them.
  bool include_seeds = false;
  double max_worlds = 1e6;
};

// Exact expected capital by enumerating live-edge worlds: every node keeps
// at most one in-edge, (u, v) with probability b(u, v) and none with
// probability 1 - sum_u b(u, v). Throws EnumerationLimitError when the
// number of worlds exceeds options.max_worlds.
double ExactCapital(const DiffusionGraph& dg, std::span<const NodeId> seeds,
                    const TargetSet& targets, const ExactOptions& options = {});

// Number of live-edge worlds ExactCapital would enumerate.
double LiveEdgeWorldCount(const DiffusionGraph& dg);

// "node-id activation-probability" lines with original ids.
void WriteActivationProbabilities(const SimulationReport& report,
                                  const SocialGraph& g, std::ostream& out);

}  // namespace dtim

#endif  // DTIM_SIMULATOR_HPP_
