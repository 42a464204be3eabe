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

#include <cmath>

#include "doctest.h"
#include "mrsum/error.hpp"
#include "mrsum/query.hpp"
#include "mrsum/summarizers.hpp"
#include "support.hpp"

using namespace mrsum;
using namespace mrsum::testing;

namespace {

std::vector<std::pair<NodeId, RelationId>> flatten(const Neighborhood& nb) {
  std::vector<std::pair<NodeId, RelationId>> out;
  for (const auto& x : nb.neighbors) out.emplace_back(x.node, x.relation);
  return out;
}

}  // namespace

TEST_CASE("neighborhood of a on the five-node graph") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  const auto s = greedy_plus(g).summary;
  const SummaryIndex index(s);
  const NodeId a = *index.find_node("a");
  const auto nb = index.neighborhood(a);
  CHECK(flatten(nb) == scan_neighbors(g, a));
  CHECK(nb.neighbors.size() == 7);
  CHECK(nb.histogram == std::vector<std::uint64_t>{3, 2, 2});
  CHECK(index.degree(a) == 7);
  CHECK_FALSE(index.find_node("zz").has_value());
  CHECK_THROWS_AS(index.neighborhood(99), Error);
}

TEST_CASE("isolated node has nothing") {
  GraphBuilder b;
  b.intern_node("lonely");
  b.add_edge("x", "y", "r");
  const auto g = std::move(b).build();
  const auto s = build_summary(g, Partition::identity(g.node_count()));
  const auto nb = SummaryIndex(s).neighborhood(0);
  CHECK(nb.neighbors.empty());
  CHECK(nb.histogram == std::vector<std::uint64_t>{0});
}

TEST_CASE("summary answers match edge-list scans") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 2 + rng() % 40;
    const auto g = random_graph(rng, n, 1 + rng() % 4, 0.05 + 0.1 * static_cast<double>(rng() % 4));
    const Summary summaries[] = {greedy_plus(g).summary, randomized_plus(g, i),
                                 kmedian_plus(g, 1 + rng() % n, i),
                                 build_summary(g, random_partition(rng, n, 1 + rng() % n))};
    for (const auto& s : summaries) {
      const SummaryIndex index(s);
      for (NodeId v = 0; v < n; ++v) {
        const auto nb = index.neighborhood(v);
        CHECK(flatten(nb) == scan_neighbors(g, v));
        std::uint64_t sum = 0;
        for (auto h : nb.histogram) sum += h;
        CHECK(sum == g.degree(v));
      }
    }
  }
}

TEST_CASE("eigenvector centrality") {
  // Star: the hub dominates and leaves are equal.
  const auto g = load_graph_string("h a r\nh b r\nh c r\nh d r\n", GraphFormat::kTriples);
  const auto s = build_summary(g, Partition::from_blocks(5, {{0}, {1, 2, 3, 4}}));
  const auto x = SummaryIndex(s).eigenvector_centrality();
  // Principal eigenvector of a 4-leaf star: hub 1/sqrt(2), leaves 1/(2 sqrt(2)).
  CHECK(x[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-6));
  for (int i = 1; i < 5; ++i) CHECK(x[i] == doctest::Approx(1 / (2 * std::sqrt(2.0))).epsilon(1e-6));
}

TEST_CASE("classification by summary cost") {
  std::mt19937_64 rng(2);
  // Class A graphs are built on blocks by residue, class B on contiguous
  // ranges; each candidate carries its class's partition.
  auto make = [&](bool by_residue) {
    std::vector<std::string> nodes;
    for (int u = 0; u < 24; ++u) nodes.push_back("v" + std::to_string(u));
    std::vector<Triple> t;
    std::uniform_real_distribution<double> unit(0, 1);
    for (NodeId u = 0; u < 24; ++u)
      for (NodeId v = u + 1; v < 24; ++v) {
        const bool same = by_residue ? u % 3 == v % 3 : u / 8 == v / 8;
        for (RelationId r = 0; r < 2; ++r)
          if (unit(rng) < (same ? 0.9 : 0.05)) t.push_back({u, v, r});
      }
    return MultiRelationGraph(nodes, {"x", "y"}, t);
  };
  std::vector<std::uint32_t> residue(24), range(24);
  for (std::uint32_t u = 0; u < 24; ++u) {
    residue[u] = u % 3;
    range[u] = u / 8;
  }
  const auto ga = make(true);
  const auto gb = make(false);
  const std::vector<ClassifyCandidate> candidates{
      {"A", build_summary(ga, Partition::from_labels(residue))},
      {"B", build_summary(gb, Partition::from_labels(range))}};
  for (int i = 0; i < 5; ++i) {
    CHECK(classify(make(true), candidates).index == 0);
    CHECK(classify(make(false), candidates).index == 1);
  }
  const std::vector<ClassifyCandidate> twins{candidates[0], candidates[0]};
  CHECK(classify(ga, twins).index == 0);
  const std::vector<ClassifyCandidate> lone{candidates[1]};
  CHECK(classify(ga, lone).index == 0);
  CHECK_THROWS_AS(classify(ga, std::vector<ClassifyCandidate>{}), Error);
}
