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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mrsum/graph.hpp"
#include "mrsum/summary.hpp"

namespace mrsum {

struct Neighbor {
  NodeId node = 0;
  RelationId relation = 0;

  auto operator<=>(const Neighbor&) const = default;
};

struct Neighborhood {
  std::vector<Neighbor> neighbors;       // sorted
  std::vector<std::uint64_t> histogram;  // one count per relation
};

// Read-only index answering queries straight from a summary. Keeps a
// reference to the summary, which must outlive it.
class SummaryIndex {
 public:
  explicit SummaryIndex(const Summary& s);

  std::optional<NodeId> find_node(std::string_view label) const;
  Neighborhood neighborhood(NodeId v) const;
  std::uint64_t degree(NodeId v) const;
  // Principal eigenvector of the relation-summed adjacency matrix, unit
  // L2 norm.
  std::vector<double> eigenvector_centrality(int max_iterations = 200,
                                             double tolerance = 1e-10) const;

 private:
  struct Incident {
    SupernodeId other;
    RelationId relation;
  };
  struct Correction {
    NodeId other;
    RelationId relation;
  };

  const Summary& s_;
  std::unordered_map<std::string_view, NodeId> by_label_;
  std::vector<std::vector<Incident>> incident_;  // per supernode
  std::vector<std::vector<Correction>> plus_;    // per node
  std::vector<std::vector<Correction>> minus_;   // per node
};

struct ClassifyCandidate {
  std::string label;
  Summary summary;
};

struct ClassifyResult {
  std::size_t index = 0;
  std::vector<std::uint64_t> totals;  // per candidate
};

// Applies each candidate's partition to g; lowest total cost wins, ties to
// the earlier candidate.
ClassifyResult classify(const MultiRelationGraph& g,
                        std::span<const ClassifyCandidate> candidates);

}  // namespace mrsum
