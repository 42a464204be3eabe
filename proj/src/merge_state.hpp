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
#include <vector>

#include "mrsum/graph.hpp"
#include "mrsum/partition.hpp"
#include "mrsum/summary.hpp"

namespace mrsum::detail {

// Fractional cost reduction of a merge, kept as an exact ratio.
struct Gain {
  std::int64_t num = 0;
  std::int64_t den = 1;

  bool positive() const { return num > 0; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// a > b
inline bool better(const Gain& a, const Gain& b) {
  return static_cast<__int128>(a.num) * b.den > static_cast<__int128>(b.num) * a.den;
}
inline bool same(const Gain& a, const Gain& b) {
  return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
}

inline Gain make_gain(std::int64_t cost_a, std::int64_t cost_b,
                      std::int64_t merged) {
  const std::int64_t den = cost_a + cost_b;
  if (den == 0) return {0, 1};
  return {den - merged, den};
}

// Supernodes of a graph under agglomerative merging, with per-relation edge
// counts between adjacent supernodes and the cost
//   C(U) = sum_r sum_{X adjacent to U in r} min(|Pi_UX| - |A_UX,r| + 1, |A_UX,r|)
// kept current after every merge. A supernode keeps its slot id for its whole
// life; a merge retires the second slot.
class MergeState {
 public:
  MergeState(const MultiRelationGraph& g, const Partition& start);

  std::size_t relation_count() const { return q_; }
  std::size_t slot_count() const { return size_.size(); }
  std::size_t active_count() const { return active_count_; }
  bool active(SupernodeId s) const { return size_[s] > 0; }
  std::uint64_t size(SupernodeId s) const { return size_[s]; }
  NodeId rep(SupernodeId s) const { return rep_[s]; }
  const std::vector<NodeId>& members(SupernodeId s) const { return members_[s]; }
  std::int64_t cost(SupernodeId s) const { return cost_[s]; }

  // Adjacent supernodes (including s itself when it has intra edges), sorted.
  const std::vector<SupernodeId>& neighbor_ids(SupernodeId s) const {
    return adj_[s].ids;
  }
  // Per-relation counts for the i-th entry of neighbor_ids(s).
  const std::uint32_t* neighbor_counts(SupernodeId s, std::size_t i) const {
    return adj_[s].counts.data() + i * q_;
  }
  // Counts toward x, or nullptr when not adjacent.
  const std::uint32_t* counts_toward(SupernodeId s, SupernodeId x) const;

  // C(U u W) evaluated from scratch.
  std::int64_t merged_cost(SupernodeId u, SupernodeId w) const;
  Gain gain(SupernodeId u, SupernodeId w) const {
    return make_gain(cost_[u], cost_[w], merged_cost(u, w));
  }

  // Active supernodes within two hops of s (s excluded), sorted by slot.
  std::vector<SupernodeId> two_hop(SupernodeId s) const;

  // Merges w into u; returns u.
  SupernodeId merge(SupernodeId u, SupernodeId w);

  std::vector<SupernodeId> active_slots() const;
  Partition partition() const;

  // Recomputes every count and cost from the graph and compares with the
  // maintained values. Returns false on any mismatch.
  bool consistent() const;

  std::int64_t cell_cost(std::uint64_t present, std::uint64_t size_a,
                         std::uint64_t size_b, bool self) const {
    return static_cast<std::int64_t>(
        pair_cost(present, pair_capacity(size_a, size_b, self)));
  }

 private:
  struct Adjacency {
    std::vector<SupernodeId> ids;
    std::vector<std::uint32_t> counts;  // ids.size() * q
  };

  std::int64_t compute_cost(SupernodeId s) const;

  const MultiRelationGraph& g_;
  std::size_t q_;
  std::vector<std::uint64_t> size_;
  std::vector<NodeId> rep_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<SupernodeId> slot_of_node_;
  std::vector<Adjacency> adj_;
  std::vector<std::int64_t> cost_;
  std::size_t active_count_ = 0;
  // Visit marks for two_hop(); not safe for concurrent use.
  mutable std::vector<std::uint32_t> stamp_;
  mutable std::uint32_t generation_ = 0;
};

}  // namespace mrsum::detail
