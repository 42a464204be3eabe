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

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "merge_state.hpp"
#include "mrsum/error.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {
namespace {

using detail::Gain;
using detail::MergeState;

std::uint64_t pair_key(SupernodeId a, SupernodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Greedy merging with a cache of C(Y u Z) for every candidate pair within two
// hops. After a merge of U and W only the terms of the cached values that
// refer to U, W or the merged supernode change, so they are patched in O(q)
// per affected pair instead of being recomputed.
class GreedyRun {
 public:
  GreedyRun(const MultiRelationGraph& g, const Partition& start,
            const GreedyOptions& options)
      : state_(g, start), options_(options) {
    const std::size_t slots = state_.slot_count();
    partners_.resize(slots);
    affected_flag_.assign(slots, 0);
    toward_u_.assign(slots * state_.relation_count(), 0);
    toward_w_.assign(slots * state_.relation_count(), 0);
    for (SupernodeId y : state_.active_slots()) {
      for (SupernodeId z : state_.two_hop(y)) {
        if (z > y) add_pair(y, z);
      }
    }
  }

  GreedyResult run() {
    GreedyResult result;
    const auto& target = options_.k_target;
    while (true) {
      if (target && state_.active_count() <= *target) break;
      const bool forced = target.has_value();
      Best best = select();
      if (!best.found) {
        if (!forced) break;
        auto slots = state_.active_slots();
        std::sort(slots.begin(), slots.end(), [&](SupernodeId a, SupernodeId b) {
          return state_.rep(a) < state_.rep(b);
        });
        best = {slots[0], slots[1], state_.gain(slots[0], slots[1]), true};
      } else if (!best.gain.positive() && !forced) {
        break;
      }
      MergeStep step;
      step.reduction_num = best.gain.num;
      step.reduction_den = best.gain.den;
      const SupernodeId h = merge(best.a, best.b);
      step.members = state_.members(h);
      result.trace.push_back(std::move(step));
      if (options_.self_check) check();
    }
    partition_ = state_.partition();
    return result;
  }

  const Partition& partition() const { return partition_; }

 private:
  struct Best {
    SupernodeId a = 0;
    SupernodeId b = 0;
    Gain gain;
    bool found = false;
  };

  void add_pair(SupernodeId a, SupernodeId b) {
    auto [it, inserted] = cache_.try_emplace(pair_key(a, b), 0);
    if (!inserted) return;
    it->second = state_.merged_cost(a, b);
    partners_[a].insert(b);
    partners_[b].insert(a);
  }

  void drop_slot(SupernodeId s) {
    for (SupernodeId z : partners_[s]) {
      cache_.erase(pair_key(s, z));
      partners_[z].erase(s);
    }
    partners_[s].clear();
  }

  std::pair<NodeId, NodeId> tie_key(SupernodeId a, SupernodeId b) const {
    const NodeId ra = state_.rep(a);
    const NodeId rb = state_.rep(b);
    return {std::min(ra, rb), std::max(ra, rb)};
  }

  Best select() const {
    Best best;
    std::pair<NodeId, NodeId> best_key;
    for (const auto& [key, merged] : cache_) {
      const auto a = static_cast<SupernodeId>(key >> 32);
      const auto b = static_cast<SupernodeId>(key & 0xffffffffu);
      const Gain g = detail::make_gain(state_.cost(a), state_.cost(b), merged);
      if (!best.found || detail::better(g, best.gain) ||
          (detail::same(g, best.gain) && tie_key(a, b) < best_key)) {
        best = {a, b, g, true};
        best_key = tie_key(a, b);
      }
    }
    return best;
  }

  SupernodeId merge(SupernodeId a, SupernodeId b) {
    const SupernodeId u = state_.rep(a) < state_.rep(b) ? a : b;
    const SupernodeId w = u == a ? b : a;
    const std::size_t q = state_.relation_count();
    const std::uint64_t su = state_.size(u);
    const std::uint64_t sw = state_.size(w);

    std::vector<SupernodeId> affected;
    for (SupernodeId s : {u, w}) {
      for (SupernodeId y : state_.neighbor_ids(s)) {
        if (y == u || y == w || affected_flag_[y]) continue;
        affected_flag_[y] = 1;
        affected.push_back(y);
      }
    }
    for (SupernodeId y : affected) {
      if (const auto* c = state_.counts_toward(y, u))
        std::copy(c, c + q, toward_u_.begin() + y * q);
      if (const auto* c = state_.counts_toward(y, w))
        std::copy(c, c + q, toward_w_.begin() + y * q);
    }
    for (SupernodeId y : affected) {
      for (SupernodeId z : partners_[y]) {
        if (z == u || z == w) continue;
        if (affected_flag_[z] && z < y) continue;
        const std::uint64_t sm = state_.size(y) + state_.size(z);
        std::int64_t delta = 0;
        for (std::size_t r = 0; r < q; ++r) {
          std::uint64_t au = toward_u_[y * q + r];
          std::uint64_t aw = toward_w_[y * q + r];
          if (affected_flag_[z]) {
            au += toward_u_[z * q + r];
            aw += toward_w_[z * q + r];
          }
          delta += state_.cell_cost(au + aw, sm, su + sw, false) -
                   state_.cell_cost(au, sm, su, false) -
                   state_.cell_cost(aw, sm, sw, false);
        }
        if (delta != 0) cache_[pair_key(y, z)] += delta;
      }
    }
    for (SupernodeId y : affected) {
      affected_flag_[y] = 0;
      std::fill_n(toward_u_.begin() + y * q, q, 0);
      std::fill_n(toward_w_.begin() + y * q, q, 0);
    }

    drop_slot(u);
    drop_slot(w);
    const SupernodeId h = state_.merge(u, w);
    for (SupernodeId z : state_.two_hop(h)) add_pair(h, z);
    std::vector<SupernodeId> around;
    for (SupernodeId y : state_.neighbor_ids(h))
      if (y != h) around.push_back(y);
    for (std::size_t i = 0; i < around.size(); ++i)
      for (std::size_t j = i + 1; j < around.size(); ++j)
        add_pair(around[i], around[j]);
    return h;
  }

  void check() const {
    if (!state_.consistent())
      throw std::logic_error("greedy: supernode state diverged");
    for (const auto& [key, merged] : cache_) {
      const auto a = static_cast<SupernodeId>(key >> 32);
      const auto b = static_cast<SupernodeId>(key & 0xffffffffu);
      if (state_.merged_cost(a, b) != merged)
        throw std::logic_error("greedy: cached merge cost diverged");
    }
  }

  MergeState state_;
  GreedyOptions options_;
  std::unordered_map<std::uint64_t, std::int64_t> cache_;
  std::vector<std::unordered_set<SupernodeId>> partners_;
  std::vector<char> affected_flag_;
  std::vector<std::uint32_t> toward_u_;
  std::vector<std::uint32_t> toward_w_;
  Partition partition_;
};

void require_single_relation(const MultiRelationGraph& view, const char* who) {
  if (view.relation_count() > 1)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(who) + " needs a single-relation graph, got " +
                    std::to_string(view.relation_count()) + " relations");
}

GreedyResult run_greedy(const MultiRelationGraph& g, const Partition& start,
                        const GreedyOptions& options) {
  if (options.k_target &&
      (*options.k_target < 1 || *options.k_target > g.node_count())) {
    throw Error(ErrorCode::kOutOfRange,
                "k = " + std::to_string(*options.k_target) +
                    " outside [1, " + std::to_string(g.node_count()) + "]");
  }
  GreedyRun run(g, start, options);
  GreedyResult result = run.run();
  result.summary = build_summary(g, run.partition());
  return result;
}

}  // namespace

GreedyResult greedy_plus(const MultiRelationGraph& g,
                         const GreedyOptions& options) {
  return run_greedy(g, Partition::identity(g.node_count()), options);
}

GreedyResult greedy_plus_from(const MultiRelationGraph& g,
                              const Partition& start,
                              const GreedyOptions& options) {
  if (start.node_count() != g.node_count())
    throw Error(ErrorCode::kInvalidArgument,
                "start partition does not match the graph");
  return run_greedy(g, start, options);
}

GreedyResult greedy_summarize(const MultiRelationGraph& view,
                              const GreedyOptions& options) {
  require_single_relation(view, "greedy");
  return greedy_plus(view, options);
}

}  // namespace mrsum
