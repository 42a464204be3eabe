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

#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "mrsum/error.hpp"
#include "mrsum/graph.hpp"
#include "support.hpp"

using namespace mrsum;
using namespace mrsum::testing;

TEST_CASE("reverse duplicates collapse") {
  const auto g = load_graph_string("a b r1\nb a r1\n", GraphFormat::kTriples);
  CHECK(g.node_count() == 2);
  CHECK(g.relation_count() == 1);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("relation lists expand") {
  const auto g = load_graph_string("a b r1,r2\n", GraphFormat::kRelationList);
  CHECK(g.node_count() == 2);
  CHECK(g.relation_count() == 2);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("comments and blank lines are skipped") {
  const auto g = load_graph_string("# header\n\na b r\n  \n# x y r\nb c r\n",
                                   GraphFormat::kTriples);
  CHECK(g.edge_count() == 2);
  CHECK(g.node_count() == 3);
}

TEST_CASE("labels are interned in first-appearance order") {
  const auto g = load_graph_string("z y s\nx z t\n", GraphFormat::kTriples);
  CHECK(g.node_label(0) == "z");
  CHECK(g.node_label(1) == "y");
  CHECK(g.node_label(2) == "x");
  CHECK(g.relation_label(1) == "t");
}

TEST_CASE("malformed input reports the line") {
  auto expect_parse = [](const char* text, GraphFormat fmt, const char* needle) {
    try {
      load_graph_string(text, fmt);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse("a b r\na b\n", GraphFormat::kTriples, "line 2");
  expect_parse("a a r\n", GraphFormat::kTriples, "line 1");
  expect_parse("a b r1,,r2\n", GraphFormat::kRelationList, "line 1");
  expect_parse("a b r\nc d e f\n", GraphFormat::kTriples, "line 2");
  expect_parse("a b r1,r2\n", GraphFormat::kTriples, "line 1");
}

TEST_CASE("invalid UTF-8 is rejected") {
  CHECK_THROWS_AS(load_graph_string("a \xff r\n", GraphFormat::kTriples), Error);
}

TEST_CASE("missing file is an I/O error") {
  try {
    load_graph_file("/nonexistent/graph.txt", GraphFormat::kTriples);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("fixture sizes") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  CHECK(g.node_count() == 5);
  CHECK(g.relation_count() == 3);
  CHECK(g.edge_count() == 16);
  CHECK(g.degree(*g.find_node("a")) == 7);
  CHECK(g.degree(*g.find_node("c")) == 7);
  CHECK(g.degree(*g.find_node("e")) == 2);
}

TEST_CASE("relation views") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  const auto v0 = relation_view(g, 0);
  CHECK(v0.relation_count() == 1);
  CHECK(v0.node_count() == 5);
  CHECK(v0.edge_count() == 5);
  CHECK(v0.has_edge(*v0.find_node("a"), *v0.find_node("c"), 0));
  CHECK_FALSE(v0.has_edge(*v0.find_node("b"), *v0.find_node("d"), 0));
  CHECK_THROWS_AS(relation_view(g, 3), Error);
  CHECK_THROWS_AS(relation_view(MultiRelationGraph(), 0), Error);

  std::mt19937_64 rng(7);
  const auto h = random_graph(rng, 20, 3, 0.2);
  std::size_t sum = 0;
  for (RelationId r = 0; r < 3; ++r) {
    std::size_t direct = 0;
    for (const auto& t : h.edges()) direct += t.r == r;
    CHECK(relation_view(h, r).edge_count() == direct);
    sum += direct;
  }
  CHECK(sum == h.edge_count());
}

TEST_CASE("adjacency is sorted and symmetric") {
  std::mt19937_64 rng(11);
  const auto g = random_graph(rng, 30, 3, 0.15);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (RelationId r = 0; r < g.relation_count(); ++r) {
      const auto nb = g.neighbors(u, r);
      CHECK(std::adjacent_find(nb.begin(), nb.end(),
                               [](NodeId a, NodeId b) { return a >= b; }) == nb.end());
      for (NodeId w : nb) {
        const auto back = g.neighbors(w, r);
        CHECK(std::binary_search(back.begin(), back.end(), u));
      }
    }
  }
}

TEST_CASE("concatenated rows") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  const NodeId e = *g.find_node("e");
  const auto row = concatenated_row(g, e);
  CHECK(row.columns.size() == g.degree(e));
  const std::size_t n = g.node_count();
  // e touches b and d in the third relation only.
  CHECK(row.columns == std::vector<std::uint32_t>{
                           static_cast<std::uint32_t>(2 * n + *g.find_node("b")),
                           static_cast<std::uint32_t>(2 * n + *g.find_node("d"))});

  const auto lone = load_graph_string("a b r\n", GraphFormat::kTriples);
  GraphBuilder b;
  b.intern_node("iso");
  b.add_edge("x", "y", "r");
  const auto with_iso = std::move(b).build();
  CHECK(concatenated_row(with_iso, 0).columns.empty());

  std::mt19937_64 rng(3);
  const auto h = random_graph(rng, 25, 4, 0.2);
  for (NodeId u = 0; u < h.node_count(); ++u) {
    const auto cat = concatenated_row(h, u);
    for (RelationId r = 0; r < h.relation_count(); ++r) {
      const auto view = relation_view(h, r);
      std::vector<std::uint32_t> block;
      for (auto c : cat.columns)
        if (c / h.node_count() == r) block.push_back(c % h.node_count());
      const auto nb = view.neighbors(u, 0);
      CHECK(block == std::vector<std::uint32_t>(nb.begin(), nb.end()));
      CHECK(adjacency_row(h, u, r).columns == block);
    }
  }
  CHECK_THROWS_AS(concatenated_row(lone, 5), Error);
}

TEST_CASE("serialization round trip in both formats") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_graph(rng, 15, 3, 0.3);
    for (auto fmt : {GraphFormat::kTriples, GraphFormat::kRelationList}) {
      const auto text = graph_to_string(g, fmt);
      const auto back = load_graph_string(text, fmt);
      std::set<std::tuple<std::string, std::string, std::string>> a, b;
      for (const auto& t : g.edges())
        a.emplace(g.node_label(t.u), g.node_label(t.v), g.relation_label(t.r));
      for (const auto& t : back.edges()) {
        auto x = back.node_label(t.u), y = back.node_label(t.v);
        if (g.find_node(x) > g.find_node(y)) std::swap(x, y);
        b.emplace(x, y, back.relation_label(t.r));
      }
      CHECK(a == b);
    }
  }
}

TEST_CASE("format names") {
  CHECK(parse_graph_format("triples") == GraphFormat::kTriples);
  CHECK(parse_graph_format("plain") == GraphFormat::kTriples);
  CHECK(parse_graph_format("relation-list") == GraphFormat::kRelationList);
  CHECK_THROWS_AS(parse_graph_format("csv"), Error);
}

TEST_CASE("constructor rejects self-edges") {
  CHECK_THROWS_AS(MultiRelationGraph({"a"}, {"r"}, {{0, 0, 0}}), Error);
}
