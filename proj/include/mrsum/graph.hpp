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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mrsum {

using NodeId = std::uint32_t;
using RelationId = std::uint32_t;

// Undirected edge (u, v) in relation r. Canonical form has u < v.
struct Triple {
  NodeId u = 0;
  NodeId v = 0;
  RelationId r = 0;

  auto operator<=>(const Triple&) const = default;
};

enum class GraphFormat {
  kTriples,       // "u v r" per line
  kRelationList,  // "u v r1,r2,...,rk" per line
};

// Sparse row of the adjacency matrix of one node. For a concatenated row the
// column of (w, r) is r * n + w.
struct AdjacencyRow {
  static constexpr RelationId kConcatenated = UINT32_MAX;

  NodeId owner = 0;
  RelationId relation = kConcatenated;
  std::vector<std::uint32_t> columns;  // strictly increasing
};

// Immutable multi-relation graph: dense node and relation indices with their
// original labels, the canonical triple set, and one CSR adjacency structure
// per relation.
class MultiRelationGraph {
 public:
  MultiRelationGraph() = default;

  // Builds the canonical graph. Triples may be in either orientation and may
  // repeat; self-edges and out-of-range indices throw.
  MultiRelationGraph(std::vector<std::string> node_labels,
                     std::vector<std::string> relation_labels,
                     std::vector<Triple> triples);

  std::size_t node_count() const { return node_labels_.size(); }
  std::size_t relation_count() const { return relation_labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<std::string>& node_labels() const { return node_labels_; }
  const std::vector<std::string>& relation_labels() const {
    return relation_labels_;
  }
  const std::string& node_label(NodeId u) const { return node_labels_.at(u); }
  const std::string& relation_label(RelationId r) const {
    return relation_labels_.at(r);
  }
  std::optional<NodeId> find_node(std::string_view label) const;
  std::optional<RelationId> find_relation(std::string_view label) const;

  // Sorted by (u, v, r) with u < v.
  const std::vector<Triple>& edges() const { return edges_; }

  // Sorted neighbor indices of u in relation r.
  std::span<const NodeId> neighbors(NodeId u, RelationId r) const;
  std::size_t degree(NodeId u, RelationId r) const {
    return neighbors(u, r).size();
  }
  // Degree summed over all relations.
  std::size_t degree(NodeId u) const;
  std::size_t relation_edge_count(RelationId r) const;
  bool has_edge(NodeId u, NodeId v, RelationId r) const;

 private:
  std::vector<std::string> node_labels_;
  std::vector<std::string> relation_labels_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, RelationId> relation_index_;
  std::vector<Triple> edges_;
  // offsets_[r] has n + 1 entries into targets_[r].
  std::vector<std::vector<std::size_t>> offsets_;
  std::vector<std::vector<NodeId>> targets_;
  std::vector<std::size_t> relation_edges_;
};

// Interns labels in first-appearance order while edges are added.
class GraphBuilder {
 public:
  NodeId intern_node(std::string_view label);
  RelationId intern_relation(std::string_view label);
  // Throws on self-edges.
  void add_edge(std::string_view u, std::string_view v, std::string_view r);
  MultiRelationGraph build() &&;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::string> relations_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::unordered_map<std::string, RelationId> relation_index_;
  std::vector<Triple> triples_;
};

MultiRelationGraph load_graph(std::istream& in, GraphFormat format);
MultiRelationGraph load_graph_string(std::string_view text, GraphFormat format);
MultiRelationGraph load_graph_file(const std::string& path, GraphFormat format);

void write_graph(std::ostream& out, const MultiRelationGraph& g,
                 GraphFormat format);
std::string graph_to_string(const MultiRelationGraph& g, GraphFormat format);

// Single-relation graph over the same node indexing holding only the edges
// of relation r.
MultiRelationGraph relation_view(const MultiRelationGraph& g, RelationId r);

AdjacencyRow adjacency_row(const MultiRelationGraph& g, NodeId u,
                           RelationId r);
AdjacencyRow concatenated_row(const MultiRelationGraph& g, NodeId u);

GraphFormat parse_graph_format(std::string_view name);

}  // namespace mrsum
