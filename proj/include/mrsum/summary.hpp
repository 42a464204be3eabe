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

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrsum/graph.hpp"
#include "mrsum/partition.hpp"

namespace mrsum {

using Rational = boost::multiprecision::cpp_rational;

// Declares every pair between supernodes a and b connected in relation r.
// a == b is a self-loop covering all intra-block pairs. Canonical: a <= b.
struct Superedge {
  SupernodeId a = 0;
  SupernodeId b = 0;
  RelationId r = 0;

  auto operator<=>(const Superedge&) const = default;
};

struct CostBreakdown {
  std::uint64_t superedges = 0;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t total = 0;
  std::uint64_t edges = 0;     // m of the summarized graph
  double relative_size = 0.0;  // total / m, 0 for an edgeless graph

  std::uint64_t corrections() const { return plus + minus; }
};

// Lossless summary: graph is explode(superedges) + c_plus - c_minus.
struct Summary {
  std::vector<std::string> node_labels;
  std::vector<std::string> relation_labels;
  Partition partition;
  std::vector<Superedge> superedges;  // sorted
  std::vector<Triple> c_plus;         // sorted canonical triples
  std::vector<Triple> c_minus;        // sorted canonical triples

  std::size_t node_count() const { return node_labels.size(); }
  std::size_t relation_count() const { return relation_labels.size(); }
  std::size_t supernode_count() const { return partition.block_count(); }
  // Edge count of the graph this summary reconstructs to.
  std::uint64_t edge_count() const;
};

// Number of node pairs between two supernodes of the given sizes; intra-block
// pairs when `self`.
inline std::uint64_t pair_capacity(std::uint64_t size_a, std::uint64_t size_b,
                                   bool self) {
  return self ? size_a * (size_a - 1) / 2 : size_a * size_b;
}

// Whether a superedge is kept for a block pair with `present` edges out of
// `capacity` possible ones: one superedge plus the missing pairs must not
// cost more than listing the present edges.
inline bool keep_superedge(std::uint64_t present, std::uint64_t capacity) {
  return present > 0 && capacity - present + 1 <= present;
}

// Cheapest encoding of one (pair, relation) cell: min(|Pi|-|A|+1, |A|).
inline std::uint64_t pair_cost(std::uint64_t present, std::uint64_t capacity) {
  if (present == 0) return 0;
  const std::uint64_t with = capacity - present + 1;
  return with < present ? with : present;
}

// Minimum-cost summary for a fixed partition.
Summary build_summary(const MultiRelationGraph& g, const Partition& p);

// Same counts as cost(build_summary(g, p)) without materializing corrections.
CostBreakdown partition_cost(const MultiRelationGraph& g, const Partition& p);

CostBreakdown cost(const Summary& s);

// Analytic correction count: sum over unordered block pairs and relations of
// min(|A|, |Pi| - |A|), the densities being taken against |Pi|.
std::uint64_t correction_size_formula(const MultiRelationGraph& g,
                                      const Partition& p);

// l1 reconstruction error of the expected-adjacency reconstruction, counting
// both orientations of every node pair: sum of 4 |A| (|Pi| - |A|) / |Pi|.
Rational l1_reconstruction_error(const MultiRelationGraph& g,
                                 const Partition& p);

MultiRelationGraph reconstruct(const Summary& s);

struct LosslessReport {
  bool lossless = false;
  std::vector<Triple> missing;  // in the graph, absent from reconstruction
  std::vector<Triple> extra;    // produced by the summary, absent from graph
  std::string message;          // empty when lossless
};

// Compares by node and relation label, so the summary need not share the
// graph's index order.
LosslessReport verify_lossless(const MultiRelationGraph& g, const Summary& s);

// Structural checks: canonical order, corrections consistent with superedges.
// Throws Error(kCorrupt) on violation.
void validate_summary(const Summary& s);

// Re-expresses the summary's node mapping over g's node indices. Both must
// cover exactly the same node labels.
Partition partition_for_graph(const Summary& s, const MultiRelationGraph& g);

// Applies a partition obtained elsewhere (for instance from a summary of a
// different graph over the same nodes) to g and returns the resulting cost.
CostBreakdown summarize_with_partition_cost(const MultiRelationGraph& g,
                                            const Summary& foreign);

void write_summary(std::ostream& out, const Summary& s,
                   GraphFormat format = GraphFormat::kTriples,
                   bool include_mapping = true);
std::string summary_to_string(const Summary& s,
                              GraphFormat format = GraphFormat::kTriples,
                              bool include_mapping = true);
Summary read_summary(std::istream& in);
Summary read_summary_string(const std::string& text);
Summary read_summary_file(const std::string& path);
void write_summary_file(const std::string& path, const Summary& s);

}  // namespace mrsum
