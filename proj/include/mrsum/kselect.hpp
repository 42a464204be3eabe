// Copyright 2026 The mrsum Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mrsum/graph.hpp"

namespace mrsum {

struct SweepPoint {
  std::size_t k = 0;
  double relative_size = 0.0;
  std::uint64_t total = 0;
};

struct SweepRange {
  std::size_t k_min = 1;
  std::size_t k_max = 1;
};

// Supernode count of Greedy+ on g.
std::size_t suggest_k(const MultiRelationGraph& g);

// [k' - w, k' + w] clamped to [1, n], with w = max(5, n / 10).
SweepRange default_sweep_range(std::size_t node_count, std::size_t suggested);

// k-Median+ cost for k = k_min, k_min + step, ..., up to k_max.
std::vector<SweepPoint> sweep_k(const MultiRelationGraph& g, std::size_t k_min,
                                std::size_t k_max, std::size_t step,
                                std::uint64_t seed);

// Smallest relative size; ties to the smallest k.
std::size_t select_k(std::span<const SweepPoint> curve);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> curve);

}  // namespace mrsum
