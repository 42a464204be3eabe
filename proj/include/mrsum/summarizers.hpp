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
#include <span>
#include <string_view>
#include <vector>

#include "mrsum/aggregation.hpp"
#include "mrsum/graph.hpp"
#include "mrsum/partition.hpp"
#include "mrsum/summary.hpp"

namespace mrsum {

// One merge performed by Greedy: the members of the new supernode and the
// fractional reduction (C(U) + C(W) - C(H)) / (C(U) + C(W)) as an exact ratio.
struct MergeStep {
  std::vector<NodeId> members;
  std::int64_t reduction_num = 0;
  std::int64_t reduction_den = 1;

  double reduction() const {
    return static_cast<double>(reduction_num) /
           static_cast<double>(reduction_den);
  }
};

struct GreedyOptions {
  // Stop at this many supernodes, forcing non-improving merges if needed.
  std::optional<std::size_t> k_target;
  // Check the incrementally maintained state against a full recomputation
  // after every merge. Slow; for tests.
  bool self_check = false;
};

struct GreedyResult {
  Summary summary;
  std::vector<MergeStep> trace;
};

// Holistic Greedy over all relations: repeatedly merges the pair of
// supernodes within two hops with the largest fractional cost reduction.
GreedyResult greedy_plus(const MultiRelationGraph& g,
                         const GreedyOptions& options = {});
// Positive-reduction merging starting from an existing partition.
GreedyResult greedy_plus_from(const MultiRelationGraph& g, const Partition& start,
                              const GreedyOptions& options = {});
Summary randomized_plus(const MultiRelationGraph& g, std::uint64_t seed);

// Single-relation algorithms. The graph must have at most one relation
// (see relation_view).
GreedyResult greedy_summarize(const MultiRelationGraph& view,
                              const GreedyOptions& options = {});
Summary randomized_summarize(const MultiRelationGraph& view,
                             std::uint64_t seed);

inline constexpr int kDefaultSwegIterations = 20;
Summary sweg_summarize(const MultiRelationGraph& view, int iterations,
                       std::uint64_t seed);

// f(u) = min of hash over u and its neighbors in any relation. `hash` is a
// bijection from nodes to 1..n.
std::vector<std::uint32_t> node_shingles(const MultiRelationGraph& g,
                                         std::span<const std::uint32_t> hash);

struct KMedianOptions {
  int max_rounds = 50;
  int restarts = 8;  // independent seedings; the lowest k-median cost wins
};

// k-median clustering of sparse binary rows under the l1 distance. Exactly k
// non-empty clusters; deterministic given the seed.
Partition kmedian_cluster(std::span<const AdjacencyRow> rows, std::size_t k,
                          std::uint64_t seed, const KMedianOptions& options = {});
// Sum over rows of the l1 distance to the coordinate-wise median of its
// cluster.
std::uint64_t kmedian_cost(std::span<const AdjacencyRow> rows,
                           const Partition& p);

Summary kmedian_summarize(const MultiRelationGraph& view, std::size_t k,
                          std::uint64_t seed);
// k-median over the concatenated adjacency rows, one partition for all
// relations.
Summary kmedian_plus(const MultiRelationGraph& g, std::size_t k,
                     std::uint64_t seed);

enum class SingleAlgorithm { kGreedy, kRandomized, kSweg, kKMedian };
SingleAlgorithm parse_single_algorithm(std::string_view name);
std::string_view to_string(SingleAlgorithm a);

struct TwoStepParams {
  SingleAlgorithm single = SingleAlgorithm::kGreedy;
  Aggregator aggregator = Aggregator::kFurthest;
  AggregateOptions aggregate;
  std::uint64_t seed = 42;
  // k for every relation when single == kKMedian; otherwise the supernode
  // count Greedy finds on that relation.
  std::optional<std::size_t> k;
  int sweg_iterations = kDefaultSwegIterations;
};

struct TwoStepResult {
  Summary summary;
  std::vector<Partition> per_relation;
  Partition aggregated;
};

// Summarizes every relation on its own, aggregates the q partitions into
// one, and builds the summary of the whole graph on it.
TwoStepResult two_step(const MultiRelationGraph& g, const TwoStepParams& params);

struct HybridResult {
  Summary summary;
  std::size_t k_used = 0;          // k handed to k-Median+
  CostBreakdown kmedian_cost;      // cost before the Greedy+ pass
  bool greedy_pass_kept = false;   // whether the merged result was returned
};

// k from Greedy+ (unless overridden), k-Median+ with that k, then positive
// Greedy+ merging on top; the cheaper of the two summaries is returned.
HybridResult hybrid(const MultiRelationGraph& g,
                    std::optional<std::size_t> k_override, std::uint64_t seed);

}  // namespace mrsum
