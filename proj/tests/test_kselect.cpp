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

#include <sstream>

#include "doctest.h"
#include "mrsum/error.hpp"
#include "mrsum/kselect.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/summarizers.hpp"
#include "support.hpp"

using namespace mrsum;
using namespace mrsum::testing;

TEST_CASE("suggested k") {
  CHECK(suggest_k(load_graph_string("a b r\na c r\na d r\nb c r\nb d r\nc d r\n",
                                    GraphFormat::kTriples)) == 1);
  CHECK(suggest_k(load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples)) == 3);
  CHECK(suggest_k(MultiRelationGraph({"a", "b", "c"}, {"r"}, {})) == 3);
}

TEST_CASE("default sweep range") {
  auto r = default_sweep_range(5, 3);
  CHECK(r.k_min == 1);
  CHECK(r.k_max == 5);
  r = default_sweep_range(1000, 300);
  CHECK(r.k_min == 200);
  CHECK(r.k_max == 400);
  r = default_sweep_range(1000, 980);
  CHECK(r.k_max == 1000);
}

TEST_CASE("five-node sweep bottoms out at three") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  const auto curve = sweep_k(g, 1, 5, 1, 42);
  REQUIRE(curve.size() == 5);
  CHECK(curve[2].k == 3);
  CHECK(curve[2].relative_size == doctest::Approx(0.375));
  CHECK(select_k(curve) == 3);
  // k = n is the identity partition.
  CHECK(curve[4].relative_size <= 1.0);
  CHECK(curve[4].total == cost(build_summary(g, Partition::identity(5))).total);
  for (const auto& p : curve)
    CHECK(p.total == cost(kmedian_plus(g, p.k, 42)).total);
}

TEST_CASE("sweep is reproducible and thread independent") {
  std::mt19937_64 rng(1);
  const auto g = random_graph(rng, 40, 2, 0.15);
  set_num_threads(1);
  const auto a = sweep_k(g, 2, 20, 3, 9);
  set_num_threads(4);
  const auto b = sweep_k(g, 2, 20, 3, 9);
  set_num_threads(1);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].k == b[i].k);
    CHECK(a[i].total == b[i].total);
  }
  const auto k = select_k(a);
  CHECK(k >= 2);
  CHECK(k <= 20);
}

TEST_CASE("select_k ties and shapes") {
  const std::vector<SweepPoint> single{{4, 0.5, 5}};
  CHECK(select_k(single) == 4);
  const std::vector<SweepPoint> down{{1, 0.9, 9}, {2, 0.8, 8}, {3, 0.7, 7}};
  CHECK(select_k(down) == 3);
  const std::vector<SweepPoint> tie{{1, 0.9, 9}, {2, 0.5, 5}, {3, 0.5, 5}};
  CHECK(select_k(tie) == 2);
  CHECK_THROWS_AS(select_k(std::vector<SweepPoint>{}), Error);
}

TEST_CASE("sweep range validation") {
  const auto g = load_graph_file(fixture("five_nodes.txt"), GraphFormat::kTriples);
  CHECK_THROWS_AS(sweep_k(g, 0, 3, 1, 1), Error);
  CHECK_THROWS_AS(sweep_k(g, 4, 3, 1, 1), Error);
  CHECK_THROWS_AS(sweep_k(g, 1, 6, 1, 1), Error);
  CHECK_THROWS_AS(sweep_k(g, 1, 3, 0, 1), Error);
}

TEST_CASE("sweep csv") {
  std::ostringstream out;
  const std::vector<SweepPoint> curve{{1, 0.5, 8}, {2, 0.25, 4}};
  write_sweep_csv(out, curve);
  CHECK(out.str() == "k,relative_size\n1,0.5\n2,0.25\n");
}
