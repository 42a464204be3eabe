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

#include "merge_state.hpp"

#include <algorithm>
#include <tuple>

#include "mrsum/summary.hpp"

namespace mrsum::detail {

MergeState::MergeState(const MultiRelationGraph& g, const Partition& start)
    : g_(g), q_(g.relation_count()) {
  const std::size_t k = start.block_count();
  size_.resize(k);
  rep_.resize(k);
  members_ = start.blocks();
  slot_of_node_ = start.assignment();
  adj_.resize(k);
  cost_.assign(k, 0);
  active_count_ = k;
  for (SupernodeId s = 0; s < k; ++s) {
    size_[s] = members_[s].size();
    rep_[s] = members_[s].front();
  }
  std::vector<std::tuple<SupernodeId, SupernodeId, RelationId>> cells;
  cells.reserve(2 * g.edge_count());
  for (const auto& t : g.edges()) {
    const SupernodeId a = slot_of_node_[t.u];
    const SupernodeId b = slot_of_node_[t.v];
    cells.emplace_back(a, b, t.r);
    if (a != b) cells.emplace_back(b, a, t.r);
  }
  std::sort(cells.begin(), cells.end());
  for (const auto& [a, b, r] : cells) {
    auto& adj = adj_[a];
    if (adj.ids.empty() || adj.ids.back() != b) {
      adj.ids.push_back(b);
      adj.counts.resize(adj.counts.size() + q_, 0);
    }
    ++adj.counts[(adj.ids.size() - 1) * q_ + r];
  }
  for (SupernodeId s = 0; s < k; ++s) cost_[s] = compute_cost(s);
  stamp_.assign(k, 0);
}

const std::uint32_t* MergeState::counts_toward(SupernodeId s,
                                               SupernodeId x) const {
  const auto& ids = adj_[s].ids;
  auto it = std::lower_bound(ids.begin(), ids.end(), x);
  if (it == ids.end() || *it != x) return nullptr;
  return adj_[s].counts.data() + (it - ids.begin()) * q_;
}

std::int64_t MergeState::compute_cost(SupernodeId s) const {
  const auto& adj = adj_[s];
  std::int64_t total = 0;
  for (std::size_t i = 0; i < adj.ids.size(); ++i) {
    const SupernodeId x = adj.ids[i];
    for (std::size_t r = 0; r < q_; ++r)
      total += cell_cost(adj.counts[i * q_ + r], size_[s], size_[x], x == s);
  }
  return total;
}

std::int64_t MergeState::merged_cost(SupernodeId u, SupernodeId w) const {
  const std::uint64_t merged_size = size_[u] + size_[w];
  std::vector<std::uint64_t> self(q_, 0);
  std::int64_t total = 0;
  const auto& au = adj_[u];
  const auto& aw = adj_[w];
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < au.ids.size() || j < aw.ids.size()) {
    SupernodeId x;
    const std::uint32_t* cu = nullptr;
    const std::uint32_t* cw = nullptr;
    if (j == aw.ids.size() || (i < au.ids.size() && au.ids[i] < aw.ids[j])) {
      x = au.ids[i];
      cu = au.counts.data() + i++ * q_;
    } else if (i == au.ids.size() || aw.ids[j] < au.ids[i]) {
      x = aw.ids[j];
      cw = aw.counts.data() + j++ * q_;
    } else {
      x = au.ids[i];
      cu = au.counts.data() + i++ * q_;
      cw = aw.counts.data() + j++ * q_;
    }
    if (x == u || x == w) {
      // Intra counts of u and w plus the u-w counts, the latter taken once
      // from u's side.
      for (std::size_t r = 0; r < q_; ++r) {
        if (x == u && cu) self[r] += cu[r];
        if (x == w && cw) self[r] += cw[r];
        if (x == w && cu) self[r] += cu[r];
      }
      continue;
    }
    for (std::size_t r = 0; r < q_; ++r) {
      const std::uint64_t present = (cu ? cu[r] : 0) + (cw ? cw[r] : 0);
      total += cell_cost(present, merged_size, size_[x], false);
    }
  }
  for (std::size_t r = 0; r < q_; ++r)
    total += cell_cost(self[r], merged_size, merged_size, true);
  return total;
}

std::vector<SupernodeId> MergeState::two_hop(SupernodeId s) const {
  ++generation_;
  std::vector<SupernodeId> out;
  stamp_[s] = generation_;
  for (SupernodeId x : adj_[s].ids) {
    if (stamp_[x] != generation_) {
      stamp_[x] = generation_;
      out.push_back(x);
    }
    for (SupernodeId y : adj_[x].ids) {
      if (stamp_[y] != generation_) {
        stamp_[y] = generation_;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SupernodeId MergeState::merge(SupernodeId u, SupernodeId w) {
  const std::uint64_t su = size_[u];
  const std::uint64_t sw = size_[w];
  const std::uint64_t sh = su + sw;

  Adjacency merged;
  std::vector<std::uint32_t> self(q_, 0);
  bool has_self = false;
  const auto& au = adj_[u];
  const auto& aw = adj_[w];
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < au.ids.size() || j < aw.ids.size()) {
    SupernodeId x;
    const std::uint32_t* cu = nullptr;
    const std::uint32_t* cw = nullptr;
    if (j == aw.ids.size() || (i < au.ids.size() && au.ids[i] < aw.ids[j])) {
      x = au.ids[i];
      cu = au.counts.data() + i++ * q_;
    } else if (i == au.ids.size() || aw.ids[j] < au.ids[i]) {
      x = aw.ids[j];
      cw = aw.counts.data() + j++ * q_;
    } else {
      x = au.ids[i];
      cu = au.counts.data() + i++ * q_;
      cw = aw.counts.data() + j++ * q_;
    }
    if (x == u || x == w) {
      has_self = true;
      for (std::size_t r = 0; r < q_; ++r) {
        if (x == u && cu) self[r] += cu[r];
        if (x == w && cw) self[r] += cw[r];
        if (x == w && cu) self[r] += cu[r];
      }
      continue;
    }
    merged.ids.push_back(x);
    for (std::size_t r = 0; r < q_; ++r)
      merged.counts.push_back((cu ? cu[r] : 0) + (cw ? cw[r] : 0));
  }
  if (has_self) {
    auto pos = std::lower_bound(merged.ids.begin(), merged.ids.end(), u);
    const auto idx = pos - merged.ids.begin();
    merged.ids.insert(pos, u);
    merged.counts.insert(merged.counts.begin() + idx * static_cast<std::ptrdiff_t>(q_),
                         self.begin(), self.end());
  }

  // Rewire every neighbor from {u, w} to the merged supernode.
  for (std::size_t e = 0; e < merged.ids.size(); ++e) {
    const SupernodeId x = merged.ids[e];
    if (x == u) continue;
    auto& ax = adj_[x];
    const std::uint64_t sx = size_[x];
    Adjacency next;
    next.ids.reserve(ax.ids.size());
    next.counts.reserve(ax.counts.size());
    bool placed = false;
    std::int64_t delta = 0;
    for (std::size_t k = 0; k < ax.ids.size(); ++k) {
      const SupernodeId y = ax.ids[k];
      if (y == u || y == w) {
        for (std::size_t r = 0; r < q_; ++r)
          delta -= cell_cost(ax.counts[k * q_ + r], sx, y == u ? su : sw, false);
        continue;
      }
      if (!placed && y > u) {
        next.ids.push_back(u);
        next.counts.insert(next.counts.end(), merged.counts.begin() + e * q_,
                           merged.counts.begin() + (e + 1) * q_);
        placed = true;
      }
      next.ids.push_back(y);
      next.counts.insert(next.counts.end(), ax.counts.begin() + k * q_,
                         ax.counts.begin() + (k + 1) * q_);
    }
    if (!placed) {
      next.ids.push_back(u);
      next.counts.insert(next.counts.end(), merged.counts.begin() + e * q_,
                         merged.counts.begin() + (e + 1) * q_);
    }
    for (std::size_t r = 0; r < q_; ++r)
      delta += cell_cost(merged.counts[e * q_ + r], sx, sh, false);
    cost_[x] += delta;
    ax = std::move(next);
  }

  for (NodeId v : members_[w]) slot_of_node_[v] = u;
  auto& mu = members_[u];
  const auto mid = mu.size();
  mu.insert(mu.end(), members_[w].begin(), members_[w].end());
  std::inplace_merge(mu.begin(), mu.begin() + static_cast<std::ptrdiff_t>(mid),
                     mu.end());
  members_[w].clear();
  members_[w].shrink_to_fit();
  rep_[u] = std::min(rep_[u], rep_[w]);
  size_[u] = sh;
  size_[w] = 0;
  adj_[u] = std::move(merged);
  adj_[w] = {};
  cost_[u] = compute_cost(u);
  cost_[w] = 0;
  --active_count_;
  return u;
}

std::vector<SupernodeId> MergeState::active_slots() const {
  std::vector<SupernodeId> out;
  out.reserve(active_count_);
  for (SupernodeId s = 0; s < size_.size(); ++s)
    if (size_[s] > 0) out.push_back(s);
  return out;
}

Partition MergeState::partition() const {
  return Partition::from_labels(slot_of_node_);
}

bool MergeState::consistent() const {
  const MergeState fresh(g_, partition());
  for (SupernodeId s : active_slots()) {
    const SupernodeId f = fresh.slot_of_node_[rep_[s]];
    if (fresh.cost_[f] != cost_[s]) return false;
    const auto& mine = adj_[s];
    const auto& theirs = fresh.adj_[f];
    if (mine.ids.size() != theirs.ids.size()) return false;
    for (std::size_t i = 0; i < mine.ids.size(); ++i) {
      if (fresh.slot_of_node_[rep_[mine.ids[i]]] != theirs.ids[i]) {
        // Slot orders differ between the two states; look the entry up.
        const auto* c = fresh.counts_toward(f, fresh.slot_of_node_[rep_[mine.ids[i]]]);
        if (!c) return false;
        for (std::size_t r = 0; r < q_; ++r)
          if (c[r] != mine.counts[i * q_ + r]) return false;
        continue;
      }
      for (std::size_t r = 0; r < q_; ++r)
        if (theirs.counts[i * q_ + r] != mine.counts[i * q_ + r]) return false;
    }
  }
  return true;
}

}  // namespace mrsum::detail
