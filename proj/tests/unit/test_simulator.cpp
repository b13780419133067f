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
#include "dtim/simulator.hpp"
#include "support/fixtures.hpp"

using namespace dtim;

TEST_CASE("empty seed set activates nothing") {
  std::mt19937_64 rng(1);
  auto dg = testing::RandomWeights(testing::RandomGraph(8, 20, rng), rng);
  auto ts = testing::AllTargets(8);
  auto r = EstimateCapital(dg, {}, ts, {1000, 3, 1});
  CHECK(r.capital_estimate == 0.0);
  for (double p : r.activation_probability) CHECK(p == 0.0);
}

TEST_CASE("single edge closed form") {
  auto g = testing::GraphFromEdges(2, {{0, 1}});
  DiffusionGraph dg(g, {0.0, 0.8}, {0.6});
  auto ts = testing::TargetsOf(2, {1});
  std::vector<NodeId> seeds{0};
  auto r = EstimateCapital(dg, seeds, ts, {1000000, 7, 1});
  CHECK(std::abs(r.capital_estimate - 0.48) <= 0.002);
  CHECK(r.activation_probability[0] == 1.0);
  CHECK(std::abs(r.activation_probability[1] - 0.6) <= 0.002);
  CHECK(ExactCapital(dg, seeds, ts) == doctest::Approx(0.48).epsilon(1e-15));

  std::vector<NodeId> target_seed{1};
  CHECK(EstimateCapital(dg, target_seed, ts, {1000, 7, 1}).capital_estimate ==
        0.0);
  CHECK(ExactCapital(dg, target_seed, ts) == 0.0);
  CHECK(ExactCapital(dg, target_seed, ts, {true, 1e6}) == 0.8);
}

TEST_CASE("two seeded in-edges") {
  auto g = testing::GraphFromEdges(3, {{0, 2}, {1, 2}});
  DiffusionGraph dg(g, {0.0, 0.0, 1.0}, {0.3, 0.3});
  auto ts = testing::TargetsOf(3, {2});
  std::vector<NodeId> seeds{0, 1};
  CHECK(ExactCapital(dg, seeds, ts) == doctest::Approx(0.6).epsilon(1e-15));
  std::vector<NodeId> all{0, 1, 2};
  CHECK(ExactCapital(dg, all, ts) == 0.0);
}

TEST_CASE("exact capital agrees with an independent world enumeration") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto dg = testing::RandomWeights(testing::RandomGraph(7, 6 + trial % 8, rng),
                                     rng);
    auto ts = SelectTargets(dg.node_weights(), TargetRule::Percentile(40));
    std::vector<NodeId> seeds{static_cast<NodeId>(trial % 7)};
    if (trial % 3 == 0) seeds.push_back(static_cast<NodeId>((trial + 3) % 7));
    for (bool inc : {false, true}) {
      CHECK(ExactCapital(dg, seeds, ts, {inc, 1e6}) ==
            doctest::Approx(testing::BruteCapital(dg, seeds, ts, inc))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("Monte Carlo agrees with the exact oracle") {
  std::mt19937_64 rng(13);
  int agree = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto dg = testing::RandomWeights(testing::RandomGraph(8, 14, rng), rng);
    auto ts = SelectTargets(dg.node_weights(), TargetRule::Percentile(50));
    std::vector<NodeId> seeds{static_cast<NodeId>(trial % 8)};
    auto r = EstimateCapital(dg, seeds, ts, {100000, 100u + static_cast<std::uint64_t>(trial), 1});
    const double exact = ExactCapital(dg, seeds, ts);
    if (std::abs(r.capital_estimate - exact) <=
        4 * r.capital_std_error + 1e-12) {
      ++agree;
    }
  }
  CHECK(agree >= 9);
}

TEST_CASE("reproducibility is bit-exact and thread-independent") {
  std::mt19937_64 rng(14);
  auto dg = testing::RandomWeights(testing::RandomGraph(50, 200, rng), rng);
  auto ts = SelectTargets(dg.node_weights(), TargetRule::Percentile(25));
  std::vector<NodeId> seeds{1, 2, 3};
  auto a = EstimateCapital(dg, seeds, ts, {5000, 9, 1});
  auto b = EstimateCapital(dg, seeds, ts, {5000, 9, 1});
  auto c = EstimateCapital(dg, seeds, ts, {5000, 9, 3});
  CHECK(a.capital_estimate == b.capital_estimate);
  CHECK(a.capital_estimate == c.capital_estimate);
  CHECK(a.capital_std_error == c.capital_std_error);
  CHECK(a.activation_probability == c.activation_probability);
  auto d = EstimateCapital(dg, seeds, ts, {5000, 10, 1});
  CHECK(a.capital_estimate != d.capital_estimate);
  std::ostringstream out;
  WriteActivationProbabilities(a, dg.graph(), out);
  const std::string text = out.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 50);
}

TEST_CASE("enumeration guard") {
  std::mt19937_64 rng(15);
  auto dg = testing::RandomWeights(testing::RandomGraph(30, 200, rng), rng);
  auto ts = testing::AllTargets(30);
  std::vector<NodeId> seeds{0};
  CHECK(LiveEdgeWorldCount(dg) > 1e6);
  CHECK_THROWS_AS(ExactCapital(dg, seeds, ts), EnumerationLimitError);
}
