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

#include "dtim/simulator.hpp"

#include <cmath>
#include <ostream>

#include "dtim/errors.hpp"
#include "dtim/format.hpp"
#include "dtim/parallel.hpp"
#include "dtim/rng.hpp"

namespace dtim {

namespace {

std::vector<char> SeedFlags(std::size_t n, std::span<const NodeId> seeds) {
  std::vector<char> flags(n, 0);
  for (NodeId s : seeds) {
    if (s >= n) throw DomainError("seed id out of range");
    flags[s] = 1;
  }
  return flags;
}

}  // namespace

SimulationReport EstimateCapital(const DiffusionGraph& dg,
                                 std::span<const NodeId> seeds,
                                 const TargetSet& targets,
                                 const SimulationOptions& options) {
  if (options.runs < 1) throw DomainError("runs must be at least 1");
  const SocialGraph& g = dg.graph();
  const std::size_t n = g.node_count();
  const std::vector<char> is_seed = SeedFlags(n, seeds);
  std::vector<NodeId> seed_list;
  for (NodeId v = 0; v < n; ++v) {
    if (is_seed[v]) seed_list.push_back(v);
  }

  std::vector<double> run_capital(options.runs, 0.0);
  const int workers = WorkerCount(options.runs, options.threads);
  std::vector<std::vector<std::uint64_t>> counts(
      workers, std::vector<std::uint64_t>(n, 0));

  ParallelFor(options.runs, options.threads,
              [&](std::size_t begin, std::size_t end, int worker) {
    std::vector<double> received(n, 0.0);
    std::vector<double> threshold(n, -1.0);
    std::vector<char> active(n, 0);
    std::vector<NodeId> touched;
    std::vector<NodeId> queue;
    auto& count = counts[worker];
    for (std::size_t run = begin; run < end; ++run) {
      RandomStream rng(options.rng_seed, run);
      queue.assign(seed_list.begin(), seed_list.end());
      for (NodeId s : seed_list) active[s] = 1;
      double capital = 0.0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const EdgeId first = g.first_out_edge(u);
        auto outs = g.out_neighbors(u);
        for (std::size_t i = 0; i < outs.size(); ++i) {
          const NodeId v = outs[i];
          if (active[v]) continue;
          received[v] += dg.edge_weight(first + static_cast<EdgeId>(i));
          if (threshold[v] < 0.0) {
            threshold[v] = rng.uniform();
            touched.push_back(v);
          }
          if (received[v] >= threshold[v]) {
            active[v] = 1;
            queue.push_back(v);
            if (targets.contains(v)) capital += dg.node_weight(v);
          }
        }
      }
      run_capital[run] = capital;
      for (NodeId v : queue) {
        ++count[v];
        active[v] = 0;
      }
      for (NodeId v : touched) {
        received[v] = 0.0;
        threshold[v] = -1.0;
      }
      touched.clear();
    }
  });

  SimulationReport report;
  report.runs = options.runs;
  report.rng_seed = options.rng_seed;
  double sum = 0.0;
  for (double c : run_capital) sum += c;
  const double runs = static_cast<double>(options.runs);
  report.capital_estimate = sum / runs;
  if (options.runs > 1) {
    double sq = 0.0;
    for (double c : run_capital) {
      const double d = c - report.capital_estimate;
      sq += d * d;
    }
    report.capital_std_error = std::sqrt(sq / (runs - 1.0) / runs);
  }
  report.activation_probability.assign(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    std::uint64_t total = 0;
    for (const auto& c : counts) total += c[v];
    report.activation_probability[v] = static_cast<double>(total) / runs;
  }
  return report;
}

double LiveEdgeWorldCount(const DiffusionGraph& dg) {
  double worlds = 1.0;
  for (NodeId v = 0; v < dg.node_count(); ++v) {
    double choices = dg.in_weight_sum(v) < 1.0 ? 1.0 : 0.0;
    for (double b : dg.in_weights(v)) {
      if (b > 0.0) choices += 1.0;
    }
    worlds *= std::max(choices, 1.0);
  }
  return worlds;
}

double ExactCapital(const DiffusionGraph& dg, std::span<const NodeId> seeds,
                    const TargetSet& targets, const ExactOptions& options) {
  const SocialGraph& g = dg.graph();
  const std::size_t n = g.node_count();
  const std::vector<char> is_seed = SeedFlags(n, seeds);
  if (LiveEdgeWorldCount(dg) > options.max_worlds) {
    throw EnumerationLimitError("too many live-edge worlds to enumerate");
  }

  // Per node: the admissible choices (parent id or "none") with their
  // probabilities. kNone marks the empty choice.
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  struct Choice {
    NodeId parent;
    double probability;
  };
  std::vector<std::vector<Choice>> choices(n);
  for (NodeId v = 0; v < n; ++v) {
    auto sources = g.in_neighbors(v);
    auto weights = dg.in_weights(v);
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (weights[i] > 0.0) choices[v].push_back({sources[i], weights[i]});
    }
    const double rest = 1.0 - dg.in_weight_sum(v);
    if (rest > 0.0 || choices[v].empty()) {
      choices[v].push_back({kNone, std::max(rest, 0.0)});
    }
  }

  std::vector<NodeId> targets_to_score;
  for (NodeId t : targets.members()) {
    if (options.include_seeds || !is_seed[t]) targets_to_score.push_back(t);
  }

  std::vector<std::size_t> pick(n, 0);
  std::vector<NodeId> parent(n);
  std::vector<signed char> state(n);  // -1 unknown, 0 unreached, 1 reached
  std::vector<NodeId> chain;
  double expected = 0.0;
  while (true) {
    double probability = 1.0;
    for (NodeId v = 0; v < n; ++v) {
      const Choice& c = choices[v][pick[v]];
      parent[v] = c.parent;
      probability *= c.probability;
    }
    if (probability > 0.0) {
      std::fill(state.begin(), state.end(), -1);
      double capital = 0.0;
      for (NodeId t : targets_to_score) {
        // Follow live in-edges back from t until a seed, a dead end, a known
        // node or a cycle.
        chain.clear();
        NodeId v = t;
        signed char verdict = 0;
        while (true) {
          if (state[v] >= 0) {
            verdict = state[v];
            break;
          }
          if (is_seed[v]) {
            verdict = 1;
            break;
          }
          state[v] = 0;  // provisional; closes cycles as unreached
          chain.push_back(v);
          if (parent[v] == kNone) break;
          v = parent[v];
        }
        for (NodeId w : chain) state[w] = verdict;
        if (verdict == 1) capital += dg.node_weight(t);
      }
      expected += probability * capital;
    }
    // Odometer increment.
    NodeId v = 0;
    for (; v < n; ++v) {
      if (++pick[v] < choices[v].size()) break;
      pick[v] = 0;
    }
    if (v == n) break;
  }
  return expected;
}

void WriteActivationProbabilities(const SimulationReport& report,
                                  const SocialGraph& g, std::ostream& out) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << g.original_id(v) << ' '
        << FormatDouble(report.activation_probability[v]) << '\n';
  }
}

}  // namespace dtim
