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
#include <set>

#include "dtim/diversity.hpp"
#include "dtim/errors.hpp"
#include "dtim/example2.hpp"
#include "support/fixtures.hpp"

using namespace dtim;

namespace {

struct Recount {
  std::set<NodeId> boundary;
  std::size_t sum = 0;
  std::vector<std::size_t> external;  // per graph node
};

// Recomputes boundary quantities from the member and edge sets alone.
Recount RecountState(const UnfoldState& s) {
  const SocialGraph& g = s.graph();
  Recount r;
  r.external.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (NodeId w : g.in_neighbors(v)) {
      if (!s.contains(v) || !s.has_edge(w, v)) r.external[v]++;
    }
  }
  for (NodeId v : s.nodes()) {
    if (r.external[v] > 0) {
      r.boundary.insert(v);
      r.sum += r.external[v];
    }
  }
  return r;
}

UnfoldState Unfold(const Example2& ex,
                   std::initializer_list<std::pair<const char*, const char*>>
                       edges) {
  UnfoldState s(ex.diffusion.graph(), ex.id("t"));
  for (auto [u, v] : edges) s.AddEdge(ex.id(u), ex.id(v));
  return s;
}

}  // namespace

TEST_CASE("boundary diversity on worked example states") {
  Example2 ex = MakeExample2();
  auto start = Unfold(ex, {});
  CHECK(start.boundary_size() == 1);
  CHECK(BoundaryDiversity(start) == 4.0);

  auto td = Unfold(ex, {{"e", "t"}, {"h", "e"}, {"d", "h"}});
  CHECK(std::vector<NodeId>(td.boundary()) ==
        std::vector<NodeId>{ex.id("t"), ex.id("d")});
  CHECK(td.boundary_sum() == 5);
  CHECK(BoundaryDiversity(td) == 2.5);

  auto full = Unfold(ex, {{"e", "t"}, {"c", "t"}, {"g", "t"}, {"b", "t"},
                          {"h", "e"}, {"d", "h"}, {"u1", "d"}, {"u2", "d"},
                          {"f", "c"}, {"a", "c"}, {"a", "f"}, {"a", "g"},
                          {"u1", "b"}, {"u2", "b"}});
  CHECK(std::vector<NodeId>(full.boundary()) ==
        std::vector<NodeId>{ex.id("u1"), ex.id("u2")});
  CHECK(BoundaryDiversity(full) == 4.0);
  CHECK(GlobalDiversity(full, ex.id("u1")) ==
        doctest::Approx(3 * std::log(2.0)).epsilon(1e-12));
  CHECK(GlobalDiversity(full, ex.id("u2")) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (const char* interior : {"t", "a", "b", "c", "d", "e", "f", "g", "h"}) {
    CHECK(GlobalDiversity(full, ex.id(interior)) == 0.0);
  }
  auto norm = MaxNormalize(std::vector<double>{3 * std::log(2.0), std::log(2.0)});
  CHECK(norm[0] == 1.0);
  CHECK(norm[1] == doctest::Approx(0.33).epsilon(0.01 / 0.33));

  UnfoldState empty_boundary(testing::GraphFromEdges(1, {}), 0);
  CHECK_THROWS_AS(BoundaryDiversity(empty_boundary), DomainError);
}

TEST_CASE("incremental and local diversity on worked example states") {
  Example2 ex = MakeExample2();
  auto start = Unfold(ex, {});
  CHECK(LocalDiversity(start, ex.id("e")) == doctest::Approx(0.625).epsilon(1e-15));
  auto te = Unfold(ex, {{"e", "t"}});
  CHECK(LocalDiversity(te, ex.id("h")) ==
        doctest::Approx(2.0 / 3 * 1.25).epsilon(1e-12));
  auto th = Unfold(ex, {{"e", "t"}, {"h", "e"}});
  CHECK(LocalDiversity(th, ex.id("d")) == doctest::Approx(1.0).epsilon(1e-12));
  auto td = Unfold(ex, {{"e", "t"}, {"h", "e"}, {"d", "h"}});
  CHECK(IncrementalBoundaryDiversity(td, ex.id("u1")) ==
        doctest::Approx(11.0 / 3).epsilon(1e-12));
  CHECK(LocalDiversity(td, ex.id("u1")) ==
        doctest::Approx(1.4667).epsilon(1e-4 / 1.4667));
  CHECK(LocalDiversity(td, ex.id("u1")) ==
        doctest::Approx(2.0 / 3 * 2.2).epsilon(1e-12));
  CHECK_THROWS_AS(IncrementalBoundaryDiversity(td, ex.id("t")), DomainError);
}

TEST_CASE("incremental boundary diversity plug-in values") {
  // t with 4 external in-edges from sources 1..4; node 5 -> 1 gives node 1
  // one external in-edge; nodes 2 has none.
  auto g = testing::GraphFromEdges(
      6, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 1}});
  UnfoldState s(g, 0);
  CHECK(IncrementalBoundaryDiversity(s, 2) == 2.0);
  auto g4 = testing::GraphFromEdges(
      9, {{1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 1}, {6, 1}, {7, 1}, {8, 1}});
  UnfoldState s4(g4, 0);
  CHECK(IncrementalBoundaryDiversity(s4, 1) == 4.0);
  CHECK(LocalDiversity(s, 2) == 0.5);
}

TEST_CASE("random unfold states: invariants, incremental oracle, local range") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    SocialGraph g = testing::RandomGraph(10, 10 + trial % 30, rng);
    UnfoldState s(g, 0);
    std::vector<NodeId> members{0};
    for (int step = 0; step < 12; ++step) {
      const NodeId v = members[rng() % members.size()];
      auto in = g.in_neighbors(v);
      if (in.empty()) continue;
      const NodeId u = in[rng() % in.size()];
      if (!s.contains(u)) members.push_back(u);
      s.AddEdge(u, v);
      Recount r = RecountState(s);
      std::vector<NodeId> b = s.boundary();
      REQUIRE(std::set<NodeId>(b.begin(), b.end()) == r.boundary);
      REQUIRE(s.boundary_sum() == r.sum);
      if (r.boundary.empty()) continue;
      for (NodeId w = 0; w < g.node_count(); ++w) {
        if (r.boundary.count(w)) continue;
        const double oracle =
            static_cast<double>(r.sum + r.external[w]) /
            static_cast<double>(r.boundary.size() + 1);
        CHECK(std::abs(IncrementalBoundaryDiversity(s, w) - oracle) <= 1e-12);
        ++checked;
        if (r.sum == 0) {
          CHECK_THROWS_AS(LocalDiversity(s, w), DomainError);
          continue;
        }
        const double bs = static_cast<double>(r.boundary.size());
        const double lo = bs / (1 + bs), hi = 2 * bs / (1 + bs);
        const double local = LocalDiversity(s, w);
        CHECK(local >= lo - 1e-15);
        if (r.external[w] <= r.sum) CHECK(local <= hi + 1e-15);
        if (r.external[w] == 0) CHECK(local == doctest::Approx(lo));
      }
      for (NodeId w : s.nodes()) {
        const double gd = GlobalDiversity(s, w);
        CHECK(gd >= 0.0);
        if (!r.boundary.count(w)) CHECK(gd == 0.0);
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("max normalization") {
  auto n = MaxNormalize(std::vector<double>{1.47, 1.2, 0.92});
  CHECK(n[0] == 1.0);
  auto rounded = MaxNormalize(std::vector<double>{1.2, 0.92});
  CHECK(rounded[1] == doctest::Approx(0.77).epsilon(0.01));
  auto zeros = MaxNormalize(std::vector<double>{0, 0, 0});
  for (double z : zeros) CHECK(z == 0.0);
}

TEST_CASE("diversity table and set diversity") {
  DiversityTable table;
  std::vector<NodeId> nodes{1, 2, 3};
  auto norm = table.AddTarget(0, nodes, std::vector<double>{2.0, 1.0, 0.0});
  CHECK(norm == std::vector<double>{1.0, 0.5, 0.0});
  table.AddTarget(4, std::vector<NodeId>{2}, std::vector<double>{3.0});
  CHECK(table.normalized(2, 4) == 1.0);
  CHECK(table.normalized(1, 4) == 0.0);
  CHECK(SetDiversity(table, std::vector<NodeId>{1, 2}) == 2.5);

  // Monotone and submodular over every pair S subset of T and v outside T.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    DiversityTable t;
    for (NodeId target = 0; target < 3; ++target) {
      std::vector<NodeId> ns;
      std::vector<double> raw;
      for (NodeId v = 0; v < 8; ++v) {
        if (unit(rng) < 0.6) {
          ns.push_back(v);
          raw.push_back(unit(rng));
        }
      }
      t.AddTarget(100 + target, ns, raw);
    }
    auto set_of = [](unsigned mask) {
      std::vector<NodeId> s;
      for (NodeId v = 0; v < 8; ++v) {
        if (mask >> v & 1) s.push_back(v);
      }
      return s;
    };
    int violations = 0;
    for (unsigned tmask = 0; tmask < 256; ++tmask) {
      for (unsigned smask = tmask;; smask = (smask - 1) & tmask) {
        for (NodeId v = 0; v < 8; ++v) {
          if (tmask >> v & 1) continue;
          const double ds = SetDiversity(t, set_of(smask | 1u << v)) -
                            SetDiversity(t, set_of(smask));
          const double dt = SetDiversity(t, set_of(tmask | 1u << v)) -
                            SetDiversity(t, set_of(tmask));
          if (ds < -1e-12 || ds < dt - 1e-12) ++violations;
        }
        if (smask == 0) break;
      }
    }
    CHECK(violations == 0);
  }
}
