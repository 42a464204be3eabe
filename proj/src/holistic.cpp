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

#include <string>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {

SingleAlgorithm parse_single_algorithm(std::string_view name) {
  if (name == "greedy") return SingleAlgorithm::kGreedy;
  if (name == "randomized") return SingleAlgorithm::kRandomized;
  if (name == "sweg") return SingleAlgorithm::kSweg;
  if (name == "kmedian") return SingleAlgorithm::kKMedian;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown single-relation algorithm '" + std::string(name) + "'");
}

std::string_view to_string(SingleAlgorithm a) {
  switch (a) {
    case SingleAlgorithm::kGreedy: return "greedy";
    case SingleAlgorithm::kRandomized: return "randomized";
    case SingleAlgorithm::kSweg: return "sweg";
    case SingleAlgorithm::kKMedian: return "kmedian";
  }
  return "?";
}

TwoStepResult two_step(const MultiRelationGraph& g, const TwoStepParams& params) {
  const std::size_t q = g.relation_count();
  if (q == 0) throw Error(ErrorCode::kInvalidArgument, "graph has no relations");
  std::vector<Partition> parts(q);
  parallel_for(q, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto view = relation_view(g, static_cast<RelationId>(r));
      const std::uint64_t seed = params.seed + r;
      switch (params.single) {
        case SingleAlgorithm::kGreedy:
          parts[r] = greedy_summarize(view).summary.partition;
          break;
        case SingleAlgorithm::kRandomized:
          parts[r] = randomized_summarize(view, seed).partition;
          break;
        case SingleAlgorithm::kSweg:
          parts[r] = sweg_summarize(view, params.sweg_iterations, seed).partition;
          break;
        case SingleAlgorithm::kKMedian: {
          const std::size_t k =
              params.k ? *params.k
                       : greedy_summarize(view).summary.partition.block_count();
          parts[r] = kmedian_summarize(view, k, seed).partition;
          break;
        }
      }
    }
  });
  auto merged = aggregate(parts, params.aggregator, params.aggregate);
  auto summary = build_summary(g, merged);
  return {std::move(summary), std::move(parts), std::move(merged)};
}

HybridResult hybrid(const MultiRelationGraph& g,
                    std::optional<std::size_t> k_override, std::uint64_t seed) {
  HybridResult out;
  out.k_used = k_override ? *k_override
                          : greedy_plus(g).summary.partition.block_count();
  auto base = kmedian_plus(g, out.k_used, seed);
  out.kmedian_cost = cost(base);
  auto improved = greedy_plus_from(g, base.partition).summary;
  // A tie keeps the merged summary, which has fewer supernodes.
  if (cost(improved).total <= out.kmedian_cost.total) {
    out.summary = std::move(improved);
    out.greedy_pass_kept = true;
  } else {
    out.summary = std::move(base);
  }
  return out;
}

}  // namespace mrsum
