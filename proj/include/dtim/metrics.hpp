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

#ifndef DTIM_METRICS_HPP_
#define DTIM_METRICS_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dtim/greedy.hpp"
#include "dtim/simulator.hpp"

namespace dtim {

// |a ∩ b| / k; both sets must have exactly k members.
double SeedOverlap(std::span<const NodeId> a, std::span<const NodeId> b,
                   std::size_t k);

struct OverlapMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
};

OverlapMatrix ComputeOverlapMatrix(std::span<const std::vector<NodeId>> sets,
                                   std::vector<std::string> labels);
void WriteOverlapMatrix(const OverlapMatrix& matrix, std::ostream& out);

// Sample standard deviation over the mean.
double CoefficientOfVariation(std::span<const double> values);

double PearsonCorrelation(std::span<const double> x, std::span<const double> y);
double SpearmanCorrelation(std::span<const double> x,
                           std::span<const double> y);

// Average ranks (1-based), ties share the mean rank.
std::vector<double> AverageRanks(std::span<const double> values);

// Counts of values in `bins` equal-width bins over [0, 1]; 1.0 falls in the
// last bin.
std::vector<std::size_t> Histogram(std::span<const double> values,
                                   std::size_t bins = 100);

struct SweepConfig {
  std::vector<double> alphas;
  std::vector<int> ks;
  SelectionConfig selection;  // alpha and k are overwritten per cell
  SimulationOptions simulation;
  std::size_t histogram_bins = 100;
};

struct SweepCell {
  double alpha = 0.0;
  int k = 0;
  SeedResult selection;
  SimulationReport simulation;
  std::vector<std::size_t> activation_histogram;  // over the target set
};

struct SweepResult {
  std::vector<SweepCell> cells;  // alpha-major, then k
};

SweepResult Sweep(const DiffusionGraph& dg, const TargetSet& targets,
                  const SweepConfig& config);

// Capital per cell plus the seed list.
void WriteSweepTable(const SweepResult& result, const SweepConfig& config,
                     const SocialGraph& g, std::ostream& out);
// Overlap matrix across alphas for one k.
OverlapMatrix SweepOverlap(const SweepResult& result, int k);
void WriteSweepHistogram(const SweepResult& result, const SweepConfig& config,
                         std::ostream& out);

}  // namespace dtim

#endif  // DTIM_METRICS_HPP_
