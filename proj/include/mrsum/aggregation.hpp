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
#include <span>
#include <string_view>
#include <vector>

#include "mrsum/partition.hpp"
#include "mrsum/summary.hpp"

namespace mrsum {

// D(u, v) = separated(u, v) / q: the fraction of input partitions placing u
// and v in different blocks. Kept as the integer numerator.
class DistanceOracle {
 public:
  explicit DistanceOracle(std::span<const Partition> partitions);

  std::size_t node_count() const { return n_; }
  std::size_t partition_count() const { return partitions_.size(); }
  std::uint32_t separated(NodeId u, NodeId v) const;
  double distance(NodeId u, NodeId v) const {
    return static_cast<double>(separated(u, v)) /
           static_cast<double>(partitions_.size());
  }

 private:
  std::span<const Partition> partitions_;
  std::size_t n_ = 0;
  std::vector<std::uint16_t> dense_;  // n * n when small enough
};

// Number of unordered node pairs on which a and b disagree.
std::uint64_t disagreement(const Partition& a, const Partition& b);

// q * D_P: same-block pairs contribute separated(u, v), cross-block pairs
// contribute q - separated(u, v).
std::uint64_t scaled_correlation_cost(const DistanceOracle& d,
                                      const Partition& p);
Rational correlation_cost(std::span<const Partition> partitions,
                          const Partition& p);

enum class Aggregator { kBest, kBalls, kAgglomerative, kFurthest, kLocalSearch };
Aggregator parse_aggregator(std::string_view name);
std::string_view to_string(Aggregator a);

struct AggregateOptions {
  double balls_alpha = 0.25;
  int localsearch_passes = 10;
};

Partition aggregate_best(std::span<const Partition> partitions);
Partition aggregate_balls(std::span<const Partition> partitions, double alpha);
Partition aggregate_agglomerative(std::span<const Partition> partitions);
Partition aggregate_furthest(std::span<const Partition> partitions);
Partition aggregate_localsearch(std::span<const Partition> partitions,
                                const Partition& init, int max_passes);

// LocalSearch starts from the Furthest result.
Partition aggregate(std::span<const Partition> partitions, Aggregator method,
                    const AggregateOptions& options = {});

}  // namespace mrsum
