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
#include <optional>

#include "mrsum/graph.hpp"
#include "mrsum/partition.hpp"
#include "mrsum/summary.hpp"

namespace mrsum {

inline constexpr std::size_t kOracleMaxNodes = 10;

enum class OracleObjective { kTotal, kCorrections };

struct OracleResult {
  Partition partition;
  CostBreakdown cost;
  std::uint64_t examined = 0;
};

// Exhaustive search over set partitions (restricted growth strings), or over
// those with exactly k blocks. The first minimum in enumeration order wins.
OracleResult brute_force_optimal(const MultiRelationGraph& g,
                                 std::optional<std::size_t> k = std::nullopt,
                                 OracleObjective objective = OracleObjective::kTotal);

}  // namespace mrsum
