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

// Shared generators and brute-force reference computations for the tests.
// The reference functions deliberately avoid the library's cost code.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mrsum/graph.hpp"
#include "mrsum/partition.hpp"
#include "mrsum/summary.hpp"

namespace mrsum::testing {

inline std::string fixture(const std::string& name) {
  return std::string(MRSUM_FIXTURE_DIR) + "/" + name;
}

inline MultiRelationGraph random_graph(std::mt19937_64& rng, std::size_t n,
                                       std::size_t q, double density) {
  std::vector<std::string> nodes;
  std::vector<std::string> relations;
  for (std::size_t u = 0; u < n; ++u) nodes.push_back("v" + std::to_string(u));
  for (std::size_t r = 0; r < q; ++r) relations.push_back("r" + std::to_string(r));
  std::bernoulli_distribution coin(density);
  std::vector<Triple> triples;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      for (RelationId r = 0; r < q; ++r)
        if (coin(rng)) triples.push_back({u, v, r});
  return MultiRelationGraph(nodes, relations, triples);
}

// Nodes split into planted blocks; within a block every pair is joined in
// every relation with probability p_in, across blocks with p_out.
inline MultiRelationGraph planted_graph(std::mt19937_64& rng, std::size_t n,
                                        std::size_t q, std::size_t blocks,
                                        double p_in, double p_out) {
  std::vector<std::string> nodes;
  std::vector<std::string> relations;
  for (std::size_t u = 0; u < n; ++u) nodes.push_back("v" + std::to_string(u));
  for (std::size_t r = 0; r < q; ++r) relations.push_back("r" + std::to_string(r));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Triple> triples;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      for (RelationId r = 0; r < q; ++r) {
        const bool same = u % blocks == v % blocks;
        if (unit(rng) < (same ? p_in : p_out)) triples.push_back({u, v, r});
      }
  return MultiRelationGraph(nodes, relations, triples);
}

inline Partition random_partition(std::mt19937_64& rng, std::size_t n,
                                  std::size_t max_blocks) {
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(std::max<std::size_t>(max_blocks, 1) - 1));
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = pick(rng);
  return Partition::from_labels(labels);
}

struct ReferenceCost {
  std::uint64_t superedges = 0;
  std::uint64_t corrections = 0;
  std::uint64_t total = 0;
  // Σ min(A, Π − A) over cells: the analytic correction count.
  std::uint64_t analytic = 0;
};

// Per block pair and relation, counts edges by testing every node pair, then
// takes the cheaper of "superedge + missing pairs" and "list every edge".
inline ReferenceCost reference_cost(const MultiRelationGraph& g,
                                    const std::vector<std::uint32_t>& block) {
  std::uint32_t k = 0;
  for (auto b : block) k = std::max(k, b + 1);
  ReferenceCost out;
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = a; b < k; ++b) {
      for (RelationId r = 0; r < g.relation_count(); ++r) {
        std::uint64_t cells = 0;
        std::uint64_t present = 0;
        for (NodeId u = 0; u < g.node_count(); ++u) {
          for (NodeId v = u + 1; v < g.node_count(); ++v) {
            const bool in = (block[u] == a && block[v] == b) ||
                            (block[u] == b && block[v] == a);
            if (!in) continue;
            ++cells;
            present += g.has_edge(u, v, r) ? 1 : 0;
          }
        }
        if (present == 0) continue;
        const std::uint64_t with = 1 + cells - present;
        if (with <= present) {
          ++out.superedges;
          out.corrections += cells - present;
        } else {
          out.corrections += present;
        }
        out.analytic += std::min(present, cells - present);
      }
    }
  }
  out.total = out.superedges + out.corrections;
  return out;
}

// The l1 reconstruction error on the dense matrix: Σ over ordered off-diagonal cells of
// |A_uv − mean of the A entries in the same block pair|.
inline Rational reference_re1(const MultiRelationGraph& g, const Partition& p) {
  const std::size_t n = g.node_count();
  const std::size_t k = p.block_count();
  Rational total = 0;
  for (RelationId r = 0; r < g.relation_count(); ++r) {
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (const auto& t : g.edges())
      if (t.r == r) a[t.u][t.v] = a[t.v][t.u] = 1;
    std::vector<std::uint64_t> ones(k * k, 0);
    std::vector<std::uint64_t> cells(k * k, 0);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const auto idx = p.block_of(u) * k + p.block_of(v);
        ++cells[idx];
        ones[idx] += a[u][v];
      }
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        if (u == v) continue;
        const auto idx = p.block_of(u) * k + p.block_of(v);
        const Rational mean(ones[idx], cells[idx]);
        const Rational diff = Rational(a[u][v]) - mean;
        total += diff < 0 ? Rational(-diff) : diff;
      }
  }
  return total;
}

inline std::uint64_t reference_disagreement(const Partition& a,
                                            const Partition& b) {
  std::uint64_t count = 0;
  for (NodeId u = 0; u < a.node_count(); ++u)
    for (NodeId v = u + 1; v < a.node_count(); ++v)
      count += (a.block_of(u) == a.block_of(v)) != (b.block_of(u) == b.block_of(v));
  return count;
}

// Neighbors of v by scanning the full edge list, as (node, relation) pairs.
inline std::vector<std::pair<NodeId, RelationId>> scan_neighbors(
    const MultiRelationGraph& g, NodeId v) {
  std::vector<std::pair<NodeId, RelationId>> out;
  for (const auto& t : g.edges()) {
    if (t.u == v) out.emplace_back(t.v, t.r);
    if (t.v == v) out.emplace_back(t.u, t.r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every set partition of n nodes as a label vector, optionally only those
// with exactly k blocks. Independent of the library's oracle.
inline std::vector<std::vector<std::uint32_t>> all_partitions(std::size_t n,
                                                              std::size_t k = 0) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  auto rec = [&](auto&& self, std::uint32_t used) -> void {
    if (cur.size() == n) {
      if (k == 0 || used == k) out.push_back(cur);
      return;
    }
    for (std::uint32_t b = 0; b <= used; ++b) {
      cur.push_back(b);
      self(self, std::max(used, b + 1));
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::set<Triple> triple_set(const MultiRelationGraph& g) {
  return {g.edges().begin(), g.edges().end()};
}

}  // namespace mrsum::testing
