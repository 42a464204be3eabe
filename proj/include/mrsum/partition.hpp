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
#include <vector>

#include "mrsum/graph.hpp"

namespace mrsum {

using SupernodeId = std::uint32_t;

// Assignment of nodes to supernodes. Always held in canonical form: supernode
// ids are contiguous and numbered in order of their smallest member, so two
// partitions with the same blocks compare equal.
class Partition {
 public:
  Partition() = default;

  // Any labelling works; it is renumbered into canonical form.
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition from_blocks(std::size_t node_count,
                               const std::vector<std::vector<NodeId>>& blocks);
  static Partition identity(std::size_t node_count);
  static Partition single_block(std::size_t node_count);

  std::size_t node_count() const { return assignment_.size(); }
  std::size_t block_count() const { return members_.size(); }
  SupernodeId block_of(NodeId u) const { return assignment_.at(u); }
  const std::vector<NodeId>& members(SupernodeId b) const {
    return members_.at(b);
  }
  const std::vector<SupernodeId>& assignment() const { return assignment_; }
  const std::vector<std::vector<NodeId>>& blocks() const { return members_; }

  bool operator==(const Partition& other) const {
    return assignment_ == other.assignment_;
  }

 private:
  std::vector<SupernodeId> assignment_;
  std::vector<std::vector<NodeId>> members_;
};

}  // namespace mrsum
