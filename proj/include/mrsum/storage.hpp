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
#include <string>
#include <vector>

#include "mrsum/graph.hpp"
#include "mrsum/summary.hpp"

namespace mrsum {

// Byte counts of the text serializations, computed without writing them.
std::uint64_t storage_bytes(const MultiRelationGraph& g, GraphFormat format);
std::uint64_t storage_bytes(const Summary& s, GraphFormat format,
                            bool include_mapping = true);
std::uint64_t mapping_bytes(const Summary& s);

// One independently built summary per relation, each with its own mapping.
struct SummaryBundle {
  std::vector<Summary> summaries;
};

// k-Median per relation. k_per_relation is either empty, in which case each
// relation uses the supernode count Greedy finds on it, or holds q entries.
SummaryBundle all_relations_bundle(const MultiRelationGraph& g,
                                   std::span<const std::size_t> k_per_relation,
                                   std::uint64_t seed);

std::uint64_t storage_bytes(const SummaryBundle& b, GraphFormat format);
std::uint64_t mapping_bytes(const SummaryBundle& b);
CostBreakdown cost(const SummaryBundle& b);

MultiRelationGraph reconstruct(const SummaryBundle& b);

void write_bundle(std::ostream& out, const SummaryBundle& b,
                  GraphFormat format = GraphFormat::kTriples);
std::string bundle_to_string(const SummaryBundle& b,
                             GraphFormat format = GraphFormat::kTriples);
SummaryBundle read_bundle(std::istream& in);
SummaryBundle read_bundle_string(const std::string& text);

}  // namespace mrsum
