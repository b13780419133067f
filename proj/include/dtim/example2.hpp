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

#ifndef DTIM_EXAMPLE2_HPP_
#define DTIM_EXAMPLE2_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dtim/diffusion.hpp"

namespace dtim {

// Worked example with one target t: eleven named nodes plus eight source-only
// "cloud" nodes (six feeding u1, two feeding u2). Weights on named edges
// reproduce the published path probabilities; cloud edges carry zero weight
// so they count as external in-edges but are never unfolded. Ids are chosen
// so that ascending-id traversal visits t's branch through e first and u1
// before u2.
struct Example2 {
  DiffusionGraph diffusion;
  TargetSet targets;
  std::vector<std::string> names;  // indexed by NodeId

  NodeId id(std::string_view name) const;
  const std::string& name(NodeId v) const { return names[v]; }
};

Example2 MakeExample2();

// Edge list of the fixture in the plain edge-list text format.
std::string Example2EdgeList();

}  // namespace dtim

#endif  // DTIM_EXAMPLE2_HPP_
