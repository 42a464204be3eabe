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
#include <map>
#include <numeric>

#include "merge_state.hpp"
#include "mrsum/error.hpp"
#include "mrsum/random.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {
namespace {

using detail::Gain;
using detail::MergeState;

// Unexplored supernodes with O(1) random pick and removal.
class Pool {
 public:
  explicit Pool(std::size_t slots) : pos_(slots, kAbsent) {}

  void add(SupernodeId s) {
    pos_[s] = items_.size();
    items_.push_back(s);
  }
  void remove(SupernodeId s) {
    const std::size_t i = pos_[s];
    if (i == kAbsent) return;
    items_[i] = items_.back();
    pos_[items_[i]] = i;
    items_.pop_back();
    pos_[s] = kAbsent;
  }
  bool contains(SupernodeId s) const { return pos_[s] != kAbsent; }
  bool empty() const { return items_.empty(); }
  SupernodeId pick(Rng& rng) const { return items_[rng.below(items_.size())]; }
  const std::vector<SupernodeId>& items() const { return items_; }

 private:
  static constexpr std::size_t kAbsent = SIZE_MAX;
  std::vector<std::size_t> pos_;
  std::vector<SupernodeId> items_;
};

// One Randomized pass over `pool`: pick an unexplored supernode, merge it with
// its best unexplored candidate if that reduces cost, otherwise mark it
// explored. `candidates(u)` lists the supernodes u may merge with.
template <typename Candidates>
void randomized_pass(MergeState& state, Pool& pool, Rng& rng,
                     Candidates&& candidates) {
  while (!pool.empty()) {
    const SupernodeId u = pool.pick(rng);
    bool found = false;
    SupernodeId best = 0;
    Gain best_gain;
    for (SupernodeId w : candidates(u)) {
      if (w == u || !pool.contains(w)) continue;
      const Gain g = state.gain(u, w);
      if (!found || detail::better(g, best_gain) ||
          (detail::same(g, best_gain) && state.rep(w) < state.rep(best))) {
        found = true;
        best = w;
        best_gain = g;
      }
    }
    if (!found || !best_gain.positive()) {
      pool.remove(u);
      continue;
    }
    pool.remove(best);
    state.merge(u, best);
  }
}

void require_single_relation(const MultiRelationGraph& view, const char* who) {
  if (view.relation_count() > 1)
    throw Error(ErrorCode::kInvalidArgument,
                std::string(who) + " needs a single-relation graph, got " +
                    std::to_string(view.relation_count()) + " relations");
}

}  // namespace

Summary randomized_plus(const MultiRelationGraph& g, std::uint64_t seed) {
  MergeState state(g, Partition::identity(g.node_count()));
  Rng rng(seed);
  Pool pool(state.slot_count());
  for (SupernodeId s : state.active_slots()) pool.add(s);
  randomized_pass(state, pool, rng,
                  [&](SupernodeId u) { return state.two_hop(u); });
  return build_summary(g, state.partition());
}

Summary randomized_summarize(const MultiRelationGraph& view,
                             std::uint64_t seed) {
  require_single_relation(view, "randomized");
  return randomized_plus(view, seed);
}

std::vector<std::uint32_t> node_shingles(const MultiRelationGraph& g,
                                         std::span<const std::uint32_t> hash) {
  if (hash.size() != g.node_count())
    throw Error(ErrorCode::kInvalidArgument, "hash must cover every node");
  std::vector<std::uint32_t> f(hash.begin(), hash.end());
  for (const auto& t : g.edges()) {
    f[t.u] = std::min(f[t.u], hash[t.v]);
    f[t.v] = std::min(f[t.v], hash[t.u]);
  }
  return f;
}

Summary sweg_summarize(const MultiRelationGraph& view, int iterations,
                       std::uint64_t seed) {
  require_single_relation(view, "sweg");
  if (iterations < 1)
    throw Error(ErrorCode::kInvalidArgument, "SWeG needs at least one iteration");
  const std::size_t n = view.node_count();
  MergeState state(view, Partition::identity(n));
  Rng rng(seed);
  std::vector<std::uint32_t> hash(n);
  Pool pool(state.slot_count());  // drained after every group
  for (int t = 0; t < iterations; ++t) {
    std::iota(hash.begin(), hash.end(), 1u);
    rng.shuffle(std::span<std::uint32_t>(hash));
    const auto f = node_shingles(view, hash);
    // Supernodes grouped by F(U) = min of f over members, groups in F order.
    std::map<std::uint32_t, std::vector<SupernodeId>> groups;
    for (SupernodeId s : state.active_slots()) {
      std::uint32_t shingle = UINT32_MAX;
      for (NodeId u : state.members(s)) shingle = std::min(shingle, f[u]);
      groups[shingle].push_back(s);
    }
    for (auto& [shingle, group] : groups) {
      if (group.size() < 2) continue;
      for (SupernodeId s : group) pool.add(s);
      randomized_pass(state, pool, rng,
                      [&](SupernodeId) { return pool.items(); });
    }
  }
  return build_summary(view, state.partition());
}

}  // namespace mrsum
