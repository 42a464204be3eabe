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

#include "mrsum/partition.hpp"

#include <unordered_map>

#include "mrsum/error.hpp"

namespace mrsum {

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  p.assignment_.resize(labels.size());
  std::unordered_map<std::uint32_t, SupernodeId> renumber;
  for (NodeId u = 0; u < labels.size(); ++u) {
    auto [it, inserted] = renumber.try_emplace(
        labels[u], static_cast<SupernodeId>(p.members_.size()));
    if (inserted) p.members_.emplace_back();
    p.assignment_[u] = it->second;
    p.members_[it->second].push_back(u);
  }
  return p;
}

Partition Partition::from_blocks(
    std::size_t node_count, const std::vector<std::vector<NodeId>>& blocks) {
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> labels(node_count, kUnset);
  for (std::uint32_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty())
      throw Error(ErrorCode::kInvalidArgument, "empty block in partition");
    for (NodeId u : blocks[b]) {
      if (u >= node_count)
        throw Error(ErrorCode::kOutOfRange, "block member out of range");
      if (labels[u] != kUnset)
        throw Error(ErrorCode::kInvalidArgument,
                    "node " + std::to_string(u) + " assigned twice");
      labels[u] = b;
    }
  }
  for (NodeId u = 0; u < node_count; ++u) {
    if (labels[u] == kUnset)
      throw Error(ErrorCode::kInvalidArgument,
                  "node " + std::to_string(u) + " not assigned");
  }
  return from_labels(labels);
}

Partition Partition::identity(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count);
  for (std::uint32_t u = 0; u < node_count; ++u) labels[u] = u;
  return from_labels(labels);
}

Partition Partition::single_block(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count, 0);
  return from_labels(labels);
}

}  // namespace mrsum
