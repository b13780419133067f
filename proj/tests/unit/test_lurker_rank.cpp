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

#include <random>

#include "dtim/errors.hpp"
#include "dtim/lurker_rank.hpp"
#include "support/fixtures.hpp"

using namespace dtim;

namespace {

// Dense fixed-point iteration written from the defining equations.
std::vector<double> DenseOracle(const SocialGraph& g, double d) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (const Edge& e : g.edges()) a[e.source][e.destination] = 1;
  std::vector<double> in(n, 1.0), out(n, 1.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      out[u] += a[u][v];
      in[v] += a[u][v];
    }
  }
  std::vector<double> lr(n, 1.0 / n);
  for (int iter = 0; iter < 5000; ++iter) {
    std::vector<double> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      double lin = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        if (a[u][v]) lin += out[u] / in[u] * lr[u];
      }
      lin /= out[v];
      double in_sum = 0.0, acc = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        if (a[v][u]) {
          in_sum += in[u];
          acc += in[u] / out[u] * lr[u];
        }
      }
      const double lout = in_sum > 0.0 ? in[v] / in_sum * acc : 0.0;
      next[v] = d * lin * (1.0 + lout) + (1.0 - d) / n;
    }
    double total = 0.0;
    for (double x : next) total += x;
    for (double& x : next) x /= total;
    lr = next;
  }
  return lr;
}

}  // namespace

TEST_CASE("two-cycle is symmetric") {
  auto g = testing::GraphFromEdges(2, {{0, 1}, {1, 0}});
  auto r = LurkerRank(g);
  CHECK(r.scores[0] == doctest::Approx(r.scores[1]).epsilon(1e-12));
  CHECK(r.residual <= 1e-9);
}

TEST_CASE("star spokes score equally") {
  std::vector<Edge> edges;
  for (NodeId s = 1; s <= 5; ++s) edges.push_back({0, s});
  auto g = testing::GraphFromEdges(6, edges);
  auto r = LurkerRank(g);
  for (NodeId s = 2; s <= 5; ++s) {
    CHECK(r.scores[s] == doctest::Approx(r.scores[1]).epsilon(1e-12));
  }
  CHECK(r.scores[1] > r.scores[0]);
}

TEST_CASE("scores match the dense oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    SocialGraph g = testing::RandomGraph(6, 4 + trial % 20, rng);
    auto r = LurkerRank(g, {0.85, 1e-13, 2000});
    auto oracle = DenseOracle(g, 0.85);
    double sum = 0.0;
    for (NodeId v = 0; v < 6; ++v) {
      CHECK(std::abs(r.scores[v] - oracle[v]) <= 1e-9);
      CHECK(r.scores[v] > 0.0);
      sum += r.scores[v];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("damping zero gives the uniform vector after one sweep") {
  std::mt19937_64 rng(2);
  SocialGraph g = testing::RandomGraph(9, 20, rng);
  auto r = LurkerRank(g, {0.0, 1e-9, 200});
  CHECK(r.iterations_used == 1);
  for (double s : r.scores) CHECK(s == doctest::Approx(1.0 / 9).epsilon(1e-15));
}

TEST_CASE("automorphism equivariance") {
  // Directed 4-cycle with chords 0->2 and 2->0; rotation by 2 is an
  // automorphism mapping 0<->2 and 1<->3.
  auto g = testing::GraphFromEdges(
      4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}});
  auto r = LurkerRank(g);
  CHECK(r.scores[0] == doctest::Approx(r.scores[2]).epsilon(1e-12));
  CHECK(r.scores[1] == doctest::Approx(r.scores[3]).epsilon(1e-12));
}

TEST_CASE("determinism and errors") {
  std::mt19937_64 rng(8);
  SocialGraph g = testing::RandomGraph(30, 90, rng);
  auto a = LurkerRank(g);
  auto b = LurkerRank(g);
  CHECK(a.scores == b.scores);
  CHECK_THROWS_AS(LurkerRank(g, {0.85, 1e-15, 1}), ConvergenceError);
  CHECK_THROWS_AS(LurkerRank(SocialGraph{}), EmptyGraphError);
  CHECK_THROWS_AS(LurkerRank(g, {1.5, 1e-9, 10}), DomainError);
}
