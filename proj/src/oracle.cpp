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

#include "mrsum/oracle.hpp"

#include <string>
#include <vector>

#include "mrsum/error.hpp"

namespace mrsum {

OracleResult brute_force_optimal(const MultiRelationGraph& g,
                                 std::optional<std::size_t> k,
                                 OracleObjective objective) {
  const std::size_t n = g.node_count();
  if (n > kOracleMaxNodes)
    throw Error(ErrorCode::kOutOfRange,
                "exhaustive search limited to " +
                    std::to_string(kOracleMaxNodes) + " nodes, got " +
                    std::to_string(n));
  if (k && (*k < 1 || *k > std::max<std::size_t>(n, 1)))
    throw Error(ErrorCode::kOutOfRange, "k = " + std::to_string(*k) +
                                            " outside [1, " + std::to_string(n) +
                                            "]");
  OracleResult best;
  if (n == 0) {
    best.partition = Partition::identity(0);
    best.cost = partition_cost(g, best.partition);
    best.examined = 1;
    return best;
  }
  auto score = [&](const CostBreakdown& c) {
    return objective == OracleObjective::kTotal ? c.total : c.corrections();
  };
  // labels[i] <= 1 + max(labels[0..i)); peak[i] = max(labels[0..i]).
  std::vector<std::uint32_t> labels(n, 0);
  std::vector<std::uint32_t> peak(n, 0);
  bool found = false;
  std::uint64_t best_score = 0;
  while (true) {
    const std::size_t blocks = peak[n - 1] + 1;
    if (!k || blocks == *k) {
      const auto p = Partition::from_labels(labels);
      const auto c = partition_cost(g, p);
      ++best.examined;
      if (!found || score(c) < best_score) {
        found = true;
        best_score = score(c);
        best.partition = p;
        best.cost = c;
      }
    }
    // Next restricted growth string.
    std::size_t i = n - 1;
    while (i > 0 && labels[i] > peak[i - 1]) --i;
    if (i == 0) break;
    ++labels[i];
    peak[i] = std::max(peak[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      labels[j] = 0;
      peak[j] = peak[i];
    }
  }
  return best;
}

}  // namespace mrsum
