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

#include "dtim/example2.hpp"

#include <algorithm>
#include <sstream>

#include "dtim/errors.hpp"

namespace dtim {

namespace {

struct WeightedEdge {
  const char* source;
  const char* destination;
  double weight;
};

const std::vector<std::string>& Names() {
  static const std::vector<std::string> names = {
      "t",  "e",  "c",  "g",  "b",  "h",  "d",  "u1", "u2", "f",
      "a",  "x1", "x2", "x3", "x4", "x5", "x6", "y1", "y2"};
  return names;
}

constexpr WeightedEdge kEdges[] = {
    {"b", "t", 0.35}, {"g", "t", 0.3},  {"c", "t", 0.2},  {"e", "t", 0.15},
    {"f", "c", 0.7},  {"a", "c", 0.3},  {"a", "f", 0.7},  {"a", "g", 0.8},
    {"h", "e", 0.6},  {"d", "h", 0.5},  {"u1", "d", 0.3}, {"u1", "b", 0.6},
    {"u2", "d", 0.7}, {"u2", "b", 0.4}, {"x1", "u1", 0.0}, {"x2", "u1", 0.0},
    {"x3", "u1", 0.0}, {"x4", "u1", 0.0}, {"x5", "u1", 0.0}, {"x6", "u1", 0.0},
    {"y1", "u2", 0.0}, {"y2", "u2", 0.0},
};

NodeId Lookup(std::string_view name) {
  const auto& names = Names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DomainError("unknown fixture node");
  return static_cast<NodeId>(it - names.begin());
}

}  // namespace

NodeId Example2::id(std::string_view name) const { return Lookup(name); }

Example2 MakeExample2() {
  const std::size_t n = Names().size();
  std::vector<Edge> edges;
  for (const auto& e : kEdges) {
    edges.push_back({Lookup(e.source), Lookup(e.destination)});
  }
  SocialGraph g = SocialGraph::FromEdges(n, edges);
  std::vector<double> b(g.edge_count(), 0.0);
  for (const auto& e : kEdges) {
    b[*g.find_edge(Lookup(e.source), Lookup(e.destination))] = e.weight;
  }
  std::vector<double> ell(n, 0.0);
  ell[Lookup("t")] = 0.5;
  TargetSet targets = SelectTargets(ell, TargetRule::Absolute(0.5));
  return Example2{DiffusionGraph(std::move(g), std::move(ell), std::move(b)),
                  std::move(targets), Names()};
}

std::string Example2EdgeList() {
  std::ostringstream out;
  out << "# worked example: t=0 e=1 c=2 g=3 b=4 h=5 d=6 u1=7 u2=8 f=9 a=10\n";
  for (const auto& e : kEdges) {
    out << Lookup(e.source) << ' ' << Lookup(e.destination) << '\n';
  }
  return out.str();
}

}  // namespace dtim
