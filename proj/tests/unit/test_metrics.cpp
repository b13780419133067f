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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "dtim/errors.hpp"
#include "dtim/example2.hpp"
#include "dtim/metrics.hpp"
#include "support/fixtures.hpp"

using namespace dtim;

TEST_CASE("seed overlap") {
  std::vector<NodeId> a{1, 2, 3, 4}, b{3, 4, 5, 6}, c{7, 8, 9, 10};
  CHECK(SeedOverlap(a, a, 4) == 1.0);
  CHECK(SeedOverlap(a, c, 4) == 0.0);
  CHECK(SeedOverlap(a, b, 4) == 0.5);
  CHECK_THROWS_AS(SeedOverlap(a, std::vector<NodeId>{1, 2}, 4), DomainError);
}

TEST_CASE("overlap matrix is symmetric with unit diagonal") {
  std::vector<std::vector<NodeId>> sets{{1, 2, 3}, {2, 3, 4}, {5, 6, 1}};
  auto m = ComputeOverlapMatrix(sets, {"x", "y", "z"});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(m.values[i][i] == 1.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(m.values[i][j] == m.values[j][i]);
  }
  CHECK(m.values[0][1] == doctest::Approx(2.0 / 3));
  std::ostringstream out;
  WriteOverlapMatrix(m, out);
  CHECK(out.str().rfind("run\tx\ty\tz\n", 0) == 0);
}

TEST_CASE("coefficient of variation") {
  std::vector<double> constant{2, 2, 2};
  CHECK(CoefficientOfVariation(constant) == 0.0);
  std::vector<double> two{1, 3};
  CHECK(CoefficientOfVariation(two) ==
        doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  std::vector<double> zeros{0, 0};
  CHECK_THROWS_AS(CoefficientOfVariation(zeros), DomainError);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(10), y(10);
    const double c = unit(rng);
    for (std::size_t i = 0; i < 10; ++i) {
      x[i] = unit(rng);
      y[i] = c * x[i];
    }
    CHECK(CoefficientOfVariation(y) ==
          doctest::Approx(CoefficientOfVariation(x)).epsilon(1e-12));
  }
}

TEST_CASE("correlations") {
  std::vector<double> x{1, 2, 3, 4, 5}, y2{2, 4, 6, 8, 10}, yn{-1, -2, -3, -4, -5};
  CHECK(PearsonCorrelation(x, y2) == doctest::Approx(1.0));
  CHECK(PearsonCorrelation(x, yn) == doctest::Approx(-1.0));
  std::vector<double> flat{1, 1, 1, 1, 1};
  CHECK_THROWS_AS(PearsonCorrelation(x, flat), DomainError);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> a(10000), b(10000);
  for (auto& v : a) v = unit(rng);
  for (auto& v : b) v = unit(rng);
  CHECK(std::abs(PearsonCorrelation(a, b)) < 0.05);

  std::vector<double> mono{1, 4, 9, 16, 25};
  CHECK(SpearmanCorrelation(x, mono) == doctest::Approx(1.0));
  CHECK(AverageRanks(std::vector<double>{3, 1, 3}) ==
        std::vector<double>{2.5, 1.0, 2.5});
}

TEST_CASE("histogram") {
  std::vector<double> v{0.0, 0.005, 0.01, 0.999, 1.0};
  auto h = Histogram(v, 100);
  CHECK(h.size() == 100);
  CHECK(h[0] == 2);
  CHECK(h[1] == 1);
  CHECK(h[99] == 2);
  CHECK_THROWS_AS(Histogram(std::vector<double>{1.5}), DomainError);
}

TEST_CASE("sweep on the worked example and on a random graph") {
  Example2 ex = MakeExample2();
  SweepConfig one;
  one.alphas = {1.0};
  one.ks = {1};
  one.selection = {1, 1.0, 0.0, DiversityVariant::kGlobal, 1};
  one.simulation = {2000, 1, 1};
  auto r = Sweep(ex.diffusion, ex.targets, one);
  REQUIRE(r.cells.size() == 1);
  auto direct = DtimSelect(ex.diffusion, ex.targets,
                           {1, 1.0, 0.0, DiversityVariant::kGlobal, 1});
  CHECK(r.cells[0].selection.nodes() == direct.nodes());

  std::mt19937_64 rng(3);
  auto dg = testing::RandomWeights(testing::RandomGraph(60, 240, rng), rng);
  auto ts = SelectTargets(dg.node_weights(), TargetRule::Percentile(25));
  SweepConfig grid;
  grid.alphas = {0.0, 0.5, 1.0};
  grid.ks = {3};
  grid.simulation = {500, 2, 1};
  auto s1 = Sweep(dg, ts, grid);
  auto s2 = Sweep(dg, ts, grid);
  auto m = SweepOverlap(s1, 3);
  REQUIRE(m.values.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(m.values[i][i] == 1.0);
  std::ostringstream t1, t2, hist;
  WriteSweepTable(s1, grid, dg.graph(), t1);
  WriteSweepTable(s2, grid, dg.graph(), t2);
  CHECK(t1.str() == t2.str());
  CHECK(t1.str().rfind("# variant=global", 0) == 0);
  WriteSweepHistogram(s1, grid, hist);
  const std::string h = hist.str();
  CHECK(std::count(h.begin(), h.end(), '\n') > 300);
  CHECK_THROWS_AS(Sweep(dg, ts, SweepConfig{}), DomainError);
}
