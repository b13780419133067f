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

#include <set>

#include "dtim/parallel.hpp"
#include "dtim/rng.hpp"

using dtim::Philox4x32;
using dtim::RandomStream;

TEST_CASE("philox known-answer vectors") {
  CHECK(Philox4x32::Encrypt({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::Encrypt({0xffffffffu, 0xffffffffu, 0xffffffffu,
                             0xffffffffu},
                            {0xffffffffu, 0xffffffffu}) ==
        Philox4x32::Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::Encrypt({0x243f6a88u, 0x85a308d3u, 0x13198a2eu,
                             0x03707344u},
                            {0xa4093822u, 0x299f31d0u}) ==
        Philox4x32::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and distinct") {
  RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(d());
  }
  CHECK(seen.size() == 300);
}

TEST_CASE("uniform draws lie in [0, 1) with the right mean") {
  RandomStream rng(1, 0);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // Standard error of the mean is sqrt(1/12/n) ~ 6.5e-4.
  CHECK(std::abs(sum / n - 0.5) < 4 * 6.5e-4);
}

TEST_CASE("parallel for covers every index once and propagates errors") {
  std::vector<int> hits(1000, 0);
  dtim::ParallelFor(hits.size(), 4, [&](std::size_t b, std::size_t e, int) {
    for (std::size_t i = b; i < e; ++i) hits[i]++;
  });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(dtim::ParallelFor(10, 3,
                                    [](std::size_t b, std::size_t, int) {
                                      if (b == 0) throw std::runtime_error("x");
                                    }),
                  std::runtime_error);
}
