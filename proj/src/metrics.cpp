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

#include "dtim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "dtim/errors.hpp"
#include "dtim/format.hpp"

namespace dtim {

double SeedOverlap(std::span<const NodeId> a, std::span<const NodeId> b,
                   std::size_t k) {
  if (k == 0 || a.size() != k || b.size() != k) {
    throw DomainError("seed sets must both have exactly k members");
  }
  std::vector<NodeId> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<NodeId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(k);
}

OverlapMatrix ComputeOverlapMatrix(std::span<const std::vector<NodeId>> sets,
                                   std::vector<std::string> labels) {
  if (labels.size() != sets.size()) {
    throw DomainError("one label per seed set is required");
  }
  OverlapMatrix m;
  m.labels = std::move(labels);
  m.values.assign(sets.size(), std::vector<double>(sets.size(), 0.0));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i; j < sets.size(); ++j) {
      const double o = SeedOverlap(sets[i], sets[j], sets[i].size());
      m.values[i][j] = o;
      m.values[j][i] = o;
    }
  }
  return m;
}

void WriteOverlapMatrix(const OverlapMatrix& matrix, std::ostream& out) {
  out << "run";
  for (const auto& l : matrix.labels) out << '\t' << l;
  out << '\n';
  for (std::size_t i = 0; i < matrix.labels.size(); ++i) {
    out << matrix.labels[i];
    for (double v : matrix.values[i]) out << '\t' << FormatDouble(v);
    out << '\n';
  }
}

namespace {

double Mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) /
         static_cast<double>(x.size());
}

}  // namespace

double CoefficientOfVariation(std::span<const double> values) {
  if (values.empty()) throw DomainError("empty sequence");
  const double mean = Mean(values);
  if (mean == 0.0) throw DomainError("coefficient of variation: zero mean");
  if (values.size() == 1) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1)) / mean;
}

double PearsonCorrelation(std::span<const double> x,
                          std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("correlation needs two equal sequences of length >= 2");
  }
  const double mx = Mean(x), my = Mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw DomainError("correlation undefined for zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
      ++j;
    }
    const double r = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y) {
  const auto rx = AverageRanks(x);
  const auto ry = AverageRanks(y);
  return PearsonCorrelation(rx, ry);
}

std::vector<std::size_t> Histogram(std::span<const double> values,
                                   std::size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("value outside [0, 1]");
    auto b = static_cast<std::size_t>(v * static_cast<double>(bins));
    counts[std::min(b, bins - 1)]++;
  }
  return counts;
}

SweepResult Sweep(const DiffusionGraph& dg, const TargetSet& targets,
                  const SweepConfig& config) {
  if (config.alphas.empty() || config.ks.empty()) {
    throw DomainError("sweep grids must be nonempty");
  }
  SweepResult result;
  for (double alpha : config.alphas) {
    for (int k : config.ks) {
      SweepCell cell;
      cell.alpha = alpha;
      cell.k = k;
      SelectionConfig sc = config.selection;
      sc.alpha = alpha;
      sc.k = k;
      cell.selection = DtimSelect(dg, targets, sc);
      const auto seeds = cell.selection.nodes();
      cell.simulation =
          EstimateCapital(dg, seeds, targets, config.simulation);
      std::vector<double> target_probs;
      for (NodeId t : targets.members()) {
        target_probs.push_back(cell.simulation.activation_probability[t]);
      }
      cell.activation_histogram =
          Histogram(target_probs, config.histogram_bins);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

namespace {

void WriteParameterHeader(const SweepConfig& config, std::ostream& out) {
  out << "# variant=" << ToString(config.selection.variant)
      << " eta=" << FormatDouble(config.selection.eta)
      << " runs=" << config.simulation.runs
      << " rng_seed=" << config.simulation.rng_seed
      << " bins=" << config.histogram_bins << '\n';
}

}  // namespace

void WriteSweepTable(const SweepResult& result, const SweepConfig& config,
                     const SocialGraph& g, std::ostream& out) {
  WriteParameterHeader(config, out);
  out << "alpha\tk\tcapital\tstd_error\tstatus\tseeds\n";
  for (const auto& cell : result.cells) {
    out << FormatDouble(cell.alpha) << '\t' << cell.k << '\t'
        << FormatDouble(cell.simulation.capital_estimate) << '\t'
        << FormatDouble(cell.simulation.capital_std_error) << '\t'
        << ToString(cell.selection.status) << '\t';
    bool first = true;
    for (NodeId s : cell.selection.nodes()) {
      out << (first ? "" : ",") << g.original_id(s);
      first = false;
    }
    out << '\n';
  }
}

OverlapMatrix SweepOverlap(const SweepResult& result, int k) {
  std::vector<std::vector<NodeId>> sets;
  std::vector<std::string> labels;
  for (const auto& cell : result.cells) {
    if (cell.k != k) continue;
    sets.push_back(cell.selection.nodes());
    labels.push_back("alpha=" + FormatDouble(cell.alpha));
  }
  // Early-stopped runs may be shorter than k; compare on the common size.
  std::size_t common = static_cast<std::size_t>(k);
  for (const auto& s : sets) common = std::min(common, s.size());
  if (common == 0) throw DomainError("no seeds to compare");
  for (auto& s : sets) s.resize(common);
  return ComputeOverlapMatrix(sets, std::move(labels));
}

void WriteSweepHistogram(const SweepResult& result, const SweepConfig& config,
                         std::ostream& out) {
  WriteParameterHeader(config, out);
  out << "alpha\tk\tbin_low\tbin_high\tcount\n";
  const double width = 1.0 / static_cast<double>(config.histogram_bins);
  for (const auto& cell : result.cells) {
    for (std::size_t b = 0; b < cell.activation_histogram.size(); ++b) {
      out << FormatDouble(cell.alpha) << '\t' << cell.k << '\t'
          << FormatDouble(static_cast<double>(b) * width) << '\t'
          << FormatDouble(static_cast<double>(b + 1) * width) << '\t'
          << cell.activation_histogram[b] << '\n';
    }
  }
}

}  // namespace dtim
