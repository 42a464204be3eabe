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

#include "mrsum/query.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrsum/error.hpp"

namespace mrsum {

SummaryIndex::SummaryIndex(const Summary& s)
    : s_(s),
      incident_(s.supernode_count()),
      plus_(s.node_count()),
      minus_(s.node_count()) {
  for (NodeId u = 0; u < s.node_count(); ++u) by_label_.emplace(s.node_labels[u], u);
  for (const auto& e : s.superedges) {
    incident_[e.a].push_back({e.b, e.r});
    if (e.a != e.b) incident_[e.b].push_back({e.a, e.r});
  }
  for (const auto& t : s.c_plus) {
    plus_[t.u].push_back({t.v, t.r});
    plus_[t.v].push_back({t.u, t.r});
  }
  for (const auto& t : s.c_minus) {
    minus_[t.u].push_back({t.v, t.r});
    minus_[t.v].push_back({t.u, t.r});
  }
}

std::optional<NodeId> SummaryIndex::find_node(std::string_view label) const {
  const auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Neighborhood SummaryIndex::neighborhood(NodeId v) const {
  if (v >= s_.node_count())
    throw Error(ErrorCode::kOutOfRange, "node " + std::to_string(v) +
                                            " not in the summary");
  Neighborhood out;
  out.histogram.assign(s_.relation_count(), 0);
  auto& list = out.neighbors;
  for (const auto& inc : incident_[s_.partition.block_of(v)]) {
    for (NodeId w : s_.partition.members(inc.other))
      if (w != v) list.push_back({w, inc.relation});
  }
  for (const auto& c : plus_[v]) list.push_back({c.other, c.relation});
  std::sort(list.begin(), list.end());
  if (!minus_[v].empty()) {
    std::vector<Neighbor> drop;
    for (const auto& c : minus_[v]) drop.push_back({c.other, c.relation});
    std::sort(drop.begin(), drop.end());
    std::vector<Neighbor> kept;
    kept.reserve(list.size());
    std::set_difference(list.begin(), list.end(), drop.begin(), drop.end(),
                        std::back_inserter(kept));
    list = std::move(kept);
  }
  for (const auto& nb : list) ++out.histogram[nb.relation];
  return out;
}

std::uint64_t SummaryIndex::degree(NodeId v) const {
  return neighborhood(v).neighbors.size();
}

std::vector<double> SummaryIndex::eigenvector_centrality(int max_iterations,
                                                         double tolerance) const {
  const std::size_t n = s_.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  for (NodeId v = 0; v < n; ++v)
    for (const auto& nb : neighborhood(v).neighbors) adj[v].push_back(nb.node);
  std::vector<double> x(n, n == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  // Iterating with (I + A) converges on bipartite graphs too.
  for (int it = 0; it < max_iterations; ++it) {
    double norm = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double acc = x[v];
      for (NodeId w : adj[v]) acc += x[w];
      y[v] = acc;
      norm += acc * acc;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      y[v] /= norm;
      change = std::max(change, std::abs(y[v] - x[v]));
    }
    x.swap(y);
    if (change < tolerance) break;
  }
  return x;
}

ClassifyResult classify(const MultiRelationGraph& g,
                        std::span<const ClassifyCandidate> candidates) {
  if (candidates.empty())
    throw Error(ErrorCode::kInvalidArgument, "no classification candidates");
  ClassifyResult out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto total = summarize_with_partition_cost(g, candidates[i].summary).total;
    out.totals.push_back(total);
    if (total < out.totals[out.index]) out.index = i;
  }
  return out;
}

}  // namespace mrsum
