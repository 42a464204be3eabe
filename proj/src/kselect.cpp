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

#include "mrsum/kselect.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {

std::size_t suggest_k(const MultiRelationGraph& g) {
  return greedy_plus(g).summary.partition.block_count();
}

SweepRange default_sweep_range(std::size_t node_count, std::size_t suggested) {
  const std::size_t n = std::max<std::size_t>(node_count, 1);
  const std::size_t w = std::max<std::size_t>(5, node_count / 10);
  SweepRange r;
  r.k_min = suggested > w ? suggested - w : 1;
  r.k_min = std::max<std::size_t>(r.k_min, 1);
  r.k_max = std::min(n, suggested + w);
  r.k_min = std::min(r.k_min, r.k_max);
  return r;
}

std::vector<SweepPoint> sweep_k(const MultiRelationGraph& g, std::size_t k_min,
                                std::size_t k_max, std::size_t step,
                                std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max || k_max > g.node_count() || step == 0)
    throw Error(ErrorCode::kOutOfRange,
                "invalid sweep range [" + std::to_string(k_min) + ", " +
                    std::to_string(k_max) + "] step " + std::to_string(step) +
                    " for " + std::to_string(g.node_count()) + " nodes");
  std::vector<SweepPoint> curve;
  for (std::size_t k = k_min; k <= k_max; k += step) curve.push_back({k, 0.0, 0});
  parallel_for(curve.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto c = cost(kmedian_plus(g, curve[i].k, seed));
      curve[i].relative_size = c.relative_size;
      curve[i].total = c.total;
    }
  });
  return curve;
}

std::size_t select_k(std::span<const SweepPoint> curve) {
  if (curve.empty()) throw Error(ErrorCode::kInvalidArgument, "empty k sweep");
  const SweepPoint* best = &curve.front();
  for (const auto& p : curve) {
    if (p.relative_size < best->relative_size ||
        (p.relative_size == best->relative_size && p.k < best->k))
      best = &p;
  }
  return best->k;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> curve) {
  out << "k,relative_size\n";
  for (const auto& p : curve) out << p.k << ',' << p.relative_size << '\n';
}

}  // namespace mrsum
