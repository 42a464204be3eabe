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

#include "mrsum/aggregation.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"

namespace mrsum {
namespace {

constexpr std::size_t kDenseLimit = 2048;

std::uint64_t choose2(std::uint64_t x) { return x * (x - 1) / 2; }

void check_inputs(std::span<const Partition> parts) {
  if (parts.empty())
    throw Error(ErrorCode::kInvalidArgument, "no partitions to aggregate");
  if (parts.size() > 0xFFFF)
    throw Error(ErrorCode::kInvalidArgument, "too many partitions");
  for (const auto& p : parts) {
    if (p.node_count() != parts.front().node_count())
      throw Error(ErrorCode::kInvalidArgument,
                  "partitions cover different node sets");
  }
}

// Pairs placed together by both a and b.
std::uint64_t joint_pairs(const Partition& a, const Partition& b) {
  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  cells.reserve(a.node_count());
  for (NodeId u = 0; u < a.node_count(); ++u)
    ++cells[(std::uint64_t{a.block_of(u)} << 32) | b.block_of(u)];
  std::uint64_t total = 0;
  for (const auto& [key, count] : cells) total += choose2(count);
  return total;
}

std::uint64_t together_pairs(const Partition& p) {
  std::uint64_t total = 0;
  for (const auto& block : p.blocks()) total += choose2(block.size());
  return total;
}

}  // namespace

DistanceOracle::DistanceOracle(std::span<const Partition> partitions)
    : partitions_(partitions) {
  check_inputs(partitions);
  n_ = partitions.front().node_count();
  if (n_ > kDenseLimit) return;
  dense_.assign(n_ * n_, 0);
  parallel_for(n_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t u = begin; u < end; ++u) {
      for (const auto& p : partitions_) {
        const auto bu = p.block_of(static_cast<NodeId>(u));
        for (std::size_t v = 0; v < n_; ++v)
          if (p.block_of(static_cast<NodeId>(v)) != bu) ++dense_[u * n_ + v];
      }
    }
  });
}

std::uint32_t DistanceOracle::separated(NodeId u, NodeId v) const {
  if (!dense_.empty()) return dense_[std::size_t{u} * n_ + v];
  std::uint32_t count = 0;
  for (const auto& p : partitions_) count += p.block_of(u) != p.block_of(v);
  return count;
}

std::uint64_t disagreement(const Partition& a, const Partition& b) {
  if (a.node_count() != b.node_count())
    throw Error(ErrorCode::kInvalidArgument,
                "partitions cover different node sets");
  return together_pairs(a) + together_pairs(b) - 2 * joint_pairs(a, b);
}

std::uint64_t scaled_correlation_cost(const DistanceOracle& d,
                                      const Partition& p) {
  if (p.node_count() != d.node_count())
    throw Error(ErrorCode::kInvalidArgument,
                "partition does not match the aggregation inputs");
  const std::uint64_t q = d.partition_count();
  std::uint64_t total = 0;
  for (NodeId u = 0; u < p.node_count(); ++u) {
    for (NodeId v = u + 1; v < p.node_count(); ++v) {
      const std::uint64_t s = d.separated(u, v);
      total += p.block_of(u) == p.block_of(v) ? s : q - s;
    }
  }
  return total;
}

Rational correlation_cost(std::span<const Partition> partitions,
                          const Partition& p) {
  check_inputs(partitions);
  std::uint64_t total = 0;
  for (const auto& s : partitions) total += disagreement(p, s);
  return Rational(total) / Rational(partitions.size());
}

Aggregator parse_aggregator(std::string_view name) {
  if (name == "best") return Aggregator::kBest;
  if (name == "balls") return Aggregator::kBalls;
  if (name == "agglomerative") return Aggregator::kAgglomerative;
  if (name == "furthest") return Aggregator::kFurthest;
  if (name == "localsearch") return Aggregator::kLocalSearch;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown aggregator '" + std::string(name) + "'");
}

std::string_view to_string(Aggregator a) {
  switch (a) {
    case Aggregator::kBest: return "best";
    case Aggregator::kBalls: return "balls";
    case Aggregator::kAgglomerative: return "agglomerative";
    case Aggregator::kFurthest: return "furthest";
    case Aggregator::kLocalSearch: return "localsearch";
  }
  return "?";
}

Partition aggregate_best(std::span<const Partition> partitions) {
  check_inputs(partitions);
  const std::size_t q = partitions.size();
  std::vector<std::uint64_t> sum(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = i + 1; j < q; ++j) {
      const auto d = disagreement(partitions[i], partitions[j]);
      sum[i] += d;
      sum[j] += d;
    }
  }
  const auto best = std::min_element(sum.begin(), sum.end()) - sum.begin();
  return partitions[static_cast<std::size_t>(best)];
}

Partition aggregate_balls(std::span<const Partition> partitions, double alpha) {
  check_inputs(partitions);
  if (!(alpha > 0.0 && alpha < 0.5))
    throw Error(ErrorCode::kOutOfRange, "balls alpha must lie in (0, 1/2)");
  const DistanceOracle d(partitions);
  const std::size_t n = d.node_count();
  const std::uint64_t q = partitions.size();

  // Total separation of u from everyone else, straight from block sizes.
  std::vector<std::uint64_t> total(n, 0);
  for (const auto& p : partitions)
    for (NodeId u = 0; u < n; ++u) total[u] += n - p.members(p.block_of(u)).size();
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return total[a] < total[b]; });

  // The ball is every free node within distance 1/2 of the pivot. It becomes
  // a cluster when its mean distance to the pivot is at most alpha; otherwise
  // the pivot stays alone.
  constexpr std::uint32_t kFree = UINT32_MAX;
  std::vector<std::uint32_t> label(n, kFree);
  std::uint32_t next = 0;
  std::vector<NodeId> ball;
  for (NodeId pivot : order) {
    if (label[pivot] != kFree) continue;
    label[pivot] = next;
    ball.clear();
    std::uint64_t sum = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (label[v] != kFree) continue;
      const std::uint64_t s = d.separated(pivot, v);
      if (2 * s <= q) {
        ball.push_back(v);
        sum += s;
      }
    }
    if (static_cast<double>(sum) <=
        alpha * static_cast<double>(q) * static_cast<double>(ball.size())) {
      for (NodeId v : ball) label[v] = next;
    }
    ++next;
  }
  return Partition::from_labels(label);
}

Partition aggregate_agglomerative(std::span<const Partition> partitions) {
  check_inputs(partitions);
  const std::size_t n = partitions.front().node_count();
  const std::uint64_t q = partitions.size();

  // together[a][b]: number of (input, node pair) agreements that a and b
  // belong together. Average distance below one half is the same as
  // 2 * together > q * |a| * |b|, so pairs with no agreement never merge.
  std::vector<std::unordered_map<std::uint32_t, std::uint64_t>> together(n);
  for (const auto& p : partitions) {
    for (const auto& block : p.blocks()) {
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j) {
          ++together[block[i]][block[j]];
          ++together[block[j]][block[i]];
        }
    }
  }
  std::vector<std::uint64_t> size(n, 1);
  std::vector<std::uint32_t> version(n, 0);
  std::vector<char> alive(n, 1);

  struct Candidate {
    std::uint64_t together, product;
    std::uint32_t a, b, va, vb;
  };
  // Highest together/product first; ties to the lowest pair.
  auto worse = [](const Candidate& x, const Candidate& y) {
    const auto lhs = static_cast<unsigned __int128>(x.together) * y.product;
    const auto rhs = static_cast<unsigned __int128>(y.together) * x.product;
    if (lhs != rhs) return lhs < rhs;
    return std::tie(x.a, x.b) > std::tie(y.a, y.b);
  };
  std::priority_queue<Candidate, std::vector<Candidate>, decltype(worse)> heap(worse);
  auto push = [&](std::uint32_t a, std::uint32_t b, std::uint64_t t) {
    if (a > b) std::swap(a, b);
    const std::uint64_t product = size[a] * size[b];
    if (2 * static_cast<unsigned __int128>(t) >
        static_cast<unsigned __int128>(q) * product)
      heap.push({t, product, a, b, version[a], version[b]});
  };
  for (std::uint32_t a = 0; a < n; ++a)
    for (const auto& [b, t] : together[a])
      if (a < b) push(a, b, t);

  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<std::vector<NodeId>> members(n);
  for (NodeId u = 0; u < n; ++u) members[u] = {u};

  while (!heap.empty()) {
    const auto top = heap.top();
    heap.pop();
    if (!alive[top.a] || !alive[top.b] || version[top.a] != top.va ||
        version[top.b] != top.vb)
      continue;
    const std::uint32_t a = top.a;  // keeps the smaller representative
    const std::uint32_t b = top.b;
    alive[b] = 0;
    size[a] += size[b];
    ++version[a];
    for (NodeId u : members[b]) label[u] = a;
    members[a].insert(members[a].end(), members[b].begin(), members[b].end());
    members[b].clear();
    together[a].erase(b);
    for (const auto& [c, t] : together[b]) {
      if (c == a) continue;
      together[a][c] += t;
      auto& back = together[c];
      back[a] += t;
      back.erase(b);
    }
    together[b].clear();
    for (const auto& [c, t] : together[a]) push(a, c, t);
  }
  return Partition::from_labels(label);
}

namespace {

// Scaled cost of a labelling relative to putting every node alone:
// sum over same-block pairs of (2 * separated - q).
std::int64_t same_block_delta(const DistanceOracle& d,
                              const std::vector<std::vector<NodeId>>& blocks) {
  const auto q = static_cast<std::int64_t>(d.partition_count());
  std::int64_t total = 0;
  for (const auto& block : blocks)
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        total += 2 * static_cast<std::int64_t>(d.separated(block[i], block[j])) - q;
  return total;
}

}  // namespace

Partition aggregate_furthest(std::span<const Partition> partitions) {
  check_inputs(partitions);
  const DistanceOracle d(partitions);
  const std::size_t n = d.node_count();
  if (n < 2) return Partition::single_block(n);

  std::vector<std::vector<NodeId>> best_blocks(1);
  for (NodeId u = 0; u < n; ++u) best_blocks[0].push_back(u);
  std::int64_t best_cost = same_block_delta(d, best_blocks);

  std::uint32_t far = 0;
  NodeId fu = 0;
  NodeId fv = 1;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (d.separated(u, v) > far) {
        far = d.separated(u, v);
        fu = u;
        fv = v;
      }
  if (far == 0) return Partition::single_block(n);

  std::vector<NodeId> centers{fu, fv};
  std::vector<std::uint32_t> nearest(n);  // distance to closest center
  std::vector<char> is_center(n, 0);
  is_center[fu] = is_center[fv] = 1;
  while (true) {
    std::vector<std::vector<NodeId>> blocks(centers.size());
    for (NodeId u = 0; u < n; ++u) {
      std::size_t arg = 0;
      std::uint32_t dist = d.separated(u, centers[0]);
      for (std::size_t c = 1; c < centers.size(); ++c) {
        const auto s = d.separated(u, centers[c]);
        if (s < dist) {
          dist = s;
          arg = c;
        }
      }
      if (is_center[u]) {
        arg = static_cast<std::size_t>(
            std::find(centers.begin(), centers.end(), u) - centers.begin());
        dist = 0;
      }
      nearest[u] = dist;
      blocks[arg].push_back(u);
    }
    std::erase_if(blocks, [](const auto& b) { return b.empty(); });
    const std::int64_t cost = same_block_delta(d, blocks);
    if (cost >= best_cost) break;
    best_cost = cost;
    best_blocks = std::move(blocks);

    NodeId next = 0;
    std::uint32_t next_dist = 0;
    for (NodeId u = 0; u < n; ++u)
      if (!is_center[u] && nearest[u] > next_dist) {
        next_dist = nearest[u];
        next = u;
      }
    if (next_dist == 0) break;
    centers.push_back(next);
    is_center[next] = 1;
  }
  return Partition::from_blocks(n, best_blocks);
}

Partition aggregate_localsearch(std::span<const Partition> partitions,
                                const Partition& init, int max_passes) {
  check_inputs(partitions);
  const DistanceOracle d(partitions);
  const std::size_t n = d.node_count();
  if (init.node_count() != n)
    throw Error(ErrorCode::kInvalidArgument,
                "initial partition does not match the aggregation inputs");
  const auto q = static_cast<std::int64_t>(d.partition_count());

  std::vector<std::uint32_t> label(init.assignment());
  std::vector<std::int64_t> size(n, 0);
  for (auto l : label) ++size[l];
  std::vector<std::int64_t> m(n);

  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (NodeId v = 0; v < n; ++v) {
      std::fill(m.begin(), m.end(), 0);
      for (NodeId u = 0; u < n; ++u)
        if (u != v) m[label[u]] += d.separated(u, v);
      const std::uint32_t cur = label[v];
      --size[cur];
      // Relative to the singleton option, joining cluster i costs
      // 2 * M(v, C_i) - q * |C_i|.
      auto join = [&](std::uint32_t i) { return 2 * m[i] - q * size[i]; };
      const std::int64_t current = size[cur] == 0 ? 0 : join(cur);
      // Only strict improvements move v; ties go to the lowest cluster, then
      // to becoming a singleton.
      std::int64_t best = current;
      std::uint32_t target = cur;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (size[i] == 0 || i == cur) continue;
        if (join(i) < best) {
          best = join(i);
          target = i;
        }
      }
      if (size[cur] > 0 && 0 < best) {
        std::uint32_t empty = 0;
        while (size[empty] != 0 || empty == cur) ++empty;
        best = 0;
        target = empty;
      }
      ++size[target];
      if (target != cur) {
        label[v] = target;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return Partition::from_labels(label);
}

Partition aggregate(std::span<const Partition> partitions, Aggregator method,
                    const AggregateOptions& options) {
  switch (method) {
    case Aggregator::kBest: return aggregate_best(partitions);
    case Aggregator::kBalls: return aggregate_balls(partitions, options.balls_alpha);
    case Aggregator::kAgglomerative: return aggregate_agglomerative(partitions);
    case Aggregator::kFurthest: return aggregate_furthest(partitions);
    case Aggregator::kLocalSearch:
      return aggregate_localsearch(partitions, aggregate_furthest(partitions),
                                   options.localsearch_passes);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown aggregator");
}

}  // namespace mrsum
