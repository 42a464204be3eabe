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

#include "doctest.h"
#include "mrsum/aggregation.hpp"
#include "mrsum/error.hpp"
#include "mrsum/summarizers.hpp"
#include "support.hpp"

using namespace mrsum;
using namespace mrsum::testing;

namespace {

const Aggregator kAll[] = {Aggregator::kBest, Aggregator::kBalls,
                           Aggregator::kAgglomerative, Aggregator::kFurthest,
                           Aggregator::kLocalSearch};

// Per-relation Greedy partitions of the five-node graph.
std::vector<Partition> greedy_inputs() {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  std::vector<Partition> parts;
  for (RelationId r = 0; r < g.relation_count(); ++r)
    parts.push_back(greedy_summarize(relation_view(g, r)).summary.partition);
  return parts;
}

// Nodes a..e are 0..4; the aggregate is {a,b,c,d},{e}.
const Partition kFourPlusOne = Partition::from_blocks(5, {{0, 1, 2, 3}, {4}});

std::vector<Partition> random_inputs(std::mt19937_64& rng, std::size_t n,
                                     std::size_t q, std::size_t max_blocks) {
  std::vector<Partition> parts;
  for (std::size_t i = 0; i < q; ++i)
    parts.push_back(random_partition(rng, n, max_blocks));
  return parts;
}

// Σ over pairs of separated-count or its complement, straight from the
// inputs.
std::uint64_t reference_scaled_cost(const std::vector<Partition>& parts,
                                    const Partition& p) {
  std::uint64_t total = 0;
  const std::uint64_t q = parts.size();
  for (NodeId u = 0; u < p.node_count(); ++u)
    for (NodeId v = u + 1; v < p.node_count(); ++v) {
      std::uint64_t s = 0;
      for (const auto& x : parts) s += x.block_of(u) != x.block_of(v);
      total += p.block_of(u) == p.block_of(v) ? s : q - s;
    }
  return total;
}

}  // namespace

TEST_CASE("per-relation greedy inputs") {
  const auto parts = greedy_inputs();
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == kFourPlusOne);
  CHECK(parts[1] == kFourPlusOne);
  // r3 groups e with a and c.
  CHECK(parts[2] == Partition::from_blocks(5, {{0, 2, 4}, {1, 3}}));
  const DistanceOracle d(parts);
  CHECK(d.separated(0, 2) == 0);
  CHECK(d.separated(1, 3) == 0);
  CHECK(d.separated(0, 1) == 1);
  CHECK(d.separated(0, 4) == 2);
  CHECK(d.separated(1, 4) == 3);
  CHECK(d.distance(1, 4) == doctest::Approx(1.0));
  CHECK(reference_disagreement(parts[0], parts[2]) == disagreement(parts[0], parts[2]));
}

TEST_CASE("disagreement basics") {
  std::mt19937_64 rng(1);
  const auto p = random_partition(rng, 10, 4);
  CHECK(disagreement(p, p) == 0);
  CHECK(disagreement(Partition::identity(9), Partition::single_block(9)) == 36);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 15;
    const auto a = random_partition(rng, n, 1 + rng() % n);
    const auto b = random_partition(rng, n, 1 + rng() % n);
    CHECK(disagreement(a, b) == reference_disagreement(a, b));
  }
  CHECK_THROWS_AS(disagreement(Partition::identity(3), Partition::identity(4)), Error);
}

TEST_CASE("reduction identity and pairwise cost agree") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 14;
    const auto parts = random_inputs(rng, n, 1 + rng() % 5, 1 + rng() % n);
    const auto p = random_partition(rng, n, 1 + rng() % n);
    std::uint64_t sum = 0;
    for (const auto& s : parts) sum += disagreement(p, s);
    const Rational q(parts.size());
    CHECK(q * correlation_cost(parts, p) == Rational(sum));
    const DistanceOracle d(parts);
    CHECK(scaled_correlation_cost(d, p) == reference_scaled_cost(parts, p));
    CHECK(scaled_correlation_cost(d, p) == sum);
  }
}

TEST_CASE("correlation cost edge cases") {
  std::mt19937_64 rng(3);
  const auto p = random_partition(rng, 8, 3);
  const std::vector<Partition> one{p};
  CHECK(correlation_cost(one, p) == 0);
  const auto parts = random_inputs(rng, 8, 3, 3);
  Rational expected = 0;
  const DistanceOracle d(parts);
  for (NodeId u = 0; u < 8; ++u)
    for (NodeId v = u + 1; v < 8; ++v) expected += 1 - Rational(d.separated(u, v), 3);
  CHECK(correlation_cost(parts, Partition::identity(8)) == expected);
}

TEST_CASE("distance oracle without the dense table") {
  std::mt19937_64 rng(4);
  const auto parts = random_inputs(rng, 2100, 2, 50);
  const DistanceOracle d(parts);
  for (int i = 0; i < 1000; ++i) {
    const NodeId u = rng() % 2100, v = rng() % 2100;
    std::uint32_t s = 0;
    for (const auto& p : parts) s += p.block_of(u) != p.block_of(v);
    CHECK(d.separated(u, v) == s);
  }
}

TEST_CASE("every aggregator returns {abcd},{e} on the per-relation greedy inputs") {
  const auto parts = greedy_inputs();
  for (auto a : kAll) {
    CAPTURE(to_string(a));
    CHECK(aggregate(parts, a) == kFourPlusOne);
  }
  CHECK(aggregate_localsearch(parts, aggregate_best(parts), 10) == kFourPlusOne);
}

TEST_CASE("trivial aggregation inputs") {
  std::mt19937_64 rng(5);
  const auto p = random_partition(rng, 12, 4);
  const std::vector<Partition> one{p};
  const std::vector<Partition> same{p, p, p};
  for (auto a : kAll) {
    CAPTURE(to_string(a));
    CHECK(aggregate(one, a) == p);
    CHECK(aggregate(same, a) == p);
  }
  // Node 5 is alone in every input.
  std::vector<Partition> far;
  far.push_back(Partition::from_blocks(6, {{0, 1, 2}, {3, 4}, {5}}));
  far.push_back(Partition::from_blocks(6, {{0, 1}, {2, 3, 4}, {5}}));
  far.push_back(Partition::from_blocks(6, {{0, 1, 2, 3, 4}, {5}}));
  for (auto a : kAll) {
    CAPTURE(to_string(a));
    const auto out = aggregate(far, a);
    CHECK(out.members(out.block_of(5)).size() == 1);
  }
}

TEST_CASE("BEST picks the lowest-index minimizer") {
  const auto a = Partition::from_blocks(4, {{0, 1}, {2, 3}});
  const auto b = Partition::from_blocks(4, {{0, 2}, {1, 3}});
  const std::vector<Partition> tie{a, b};
  CHECK(aggregate_best(tie) == a);
  CHECK_THROWS_AS(aggregate_best(std::vector<Partition>{}), Error);
}

TEST_CASE("BEST stays within its approximation ratio") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 2 + rng() % 6;
    const std::size_t q = 2 + rng() % 3;
    const auto parts = random_inputs(rng, n, q, 1 + rng() % n);
    std::uint64_t opt = UINT64_MAX;
    for (const auto& labels : all_partitions(n)) {
      const auto p = Partition::from_labels(labels);
      std::uint64_t sum = 0;
      for (const auto& s : parts) sum += reference_disagreement(p, s);
      opt = std::min(opt, sum);
    }
    std::uint64_t got = 0;
    const auto best = aggregate_best(parts);
    for (const auto& s : parts) got += reference_disagreement(best, s);
    // got <= 2 (1 - 1/q) opt, in integers.
    CHECK(got * q <= 2 * (q - 1) * opt);
  }
}

TEST_CASE("balls alpha must lie in the open interval") {
  const std::vector<Partition> one{Partition::identity(3)};
  CHECK_THROWS_AS(aggregate_balls(one, 0.0), Error);
  CHECK_THROWS_AS(aggregate_balls(one, 0.5), Error);
  CHECK_NOTHROW(aggregate_balls(one, 0.49));
}

TEST_CASE("local search fixes one misplaced node in a pass") {
  // Blocks {0..4} and {5..9}; the start puts node 4 on the wrong side.
  const auto truth = Partition::from_blocks(10, {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
  const std::vector<Partition> parts{truth, truth, truth};
  const auto start = Partition::from_blocks(10, {{0, 1, 2, 3}, {4, 5, 6, 7, 8, 9}});
  // Moving 4 home costs 2*M - q*|C|: 0 - 3*4 = -12 against 2*15 - 3*5 = 15 now.
  CHECK(aggregate_localsearch(parts, start, 1) == truth);
}

TEST_CASE("local search leaves a local optimum alone") {
  std::mt19937_64 rng(7);
  const auto parts = random_inputs(rng, 15, 3, 4);
  const auto once = aggregate_localsearch(parts, Partition::identity(15), 100);
  CHECK(aggregate_localsearch(parts, once, 100) == once);
}

TEST_CASE("local search never raises the objective") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + rng() % 20;
    const auto parts = random_inputs(rng, n, 1 + rng() % 4, 1 + rng() % n);
    const DistanceOracle d(parts);
    auto p = random_partition(rng, n, 1 + rng() % n);
    auto before = scaled_correlation_cost(d, p);
    for (int pass = 0; pass < 5; ++pass) {
      p = aggregate_localsearch(parts, p, 1);
      const auto after = scaled_correlation_cost(d, p);
      CHECK(after <= before);
      before = after;
    }
  }
}

TEST_CASE("aggregators return partitions of the input nodes") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng() % 30;
    const auto parts = random_inputs(rng, n, 1 + rng() % 5, 1 + rng() % n);
    for (auto a : kAll) {
      const auto p = aggregate(parts, a);
      CHECK(p.node_count() == n);
      std::size_t covered = 0;
      for (const auto& b : p.blocks()) covered += b.size();
      CHECK(covered == n);
    }
  }
  const std::vector<Partition> mismatch{Partition::identity(3), Partition::identity(4)};
  CHECK_THROWS_AS(aggregate(mismatch, Aggregator::kFurthest), Error);
}

TEST_CASE("aggregator names") {
  for (auto a : kAll) CHECK(parse_aggregator(to_string(a)) == a);
  CHECK_THROWS_AS(parse_aggregator("median"), Error);
}
