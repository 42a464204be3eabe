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

#include "mrsum/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mrsum/error.hpp"

namespace mrsum {
namespace {

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c >> 5) == 0x6) {
      extra = 1;
    } else if ((c >> 4) == 0xe) {
      extra = 2;
    } else if ((c >> 3) == 0x1e) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    }
    i += extra + 1;
  }
  return true;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorCode::kParse,
              "line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

MultiRelationGraph::MultiRelationGraph(std::vector<std::string> node_labels,
                                       std::vector<std::string> relation_labels,
                                       std::vector<Triple> triples)
    : node_labels_(std::move(node_labels)),
      relation_labels_(std::move(relation_labels)) {
  const std::size_t n = node_labels_.size();
  const std::size_t q = relation_labels_.size();
  for (NodeId i = 0; i < n; ++i) {
    if (!node_index_.emplace(node_labels_[i], i).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate node label '" + node_labels_[i] + "'");
  }
  for (RelationId i = 0; i < q; ++i) {
    if (!relation_index_.emplace(relation_labels_[i], i).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate relation label '" + relation_labels_[i] + "'");
  }
  for (auto& t : triples) {
    if (t.u >= n || t.v >= n || t.r >= q)
      throw Error(ErrorCode::kOutOfRange, "edge references unknown index");
    if (t.u == t.v)
      throw Error(ErrorCode::kInvalidArgument,
                  "self-edge on node '" + node_labels_[t.u] + "'");
    if (t.u > t.v) std::swap(t.u, t.v);
  }
  std::sort(triples.begin(), triples.end());
  triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
  edges_ = std::move(triples);

  offsets_.assign(q, std::vector<std::size_t>(n + 1, 0));
  targets_.assign(q, {});
  relation_edges_.assign(q, 0);
  for (const auto& t : edges_) {
    ++offsets_[t.r][t.u + 1];
    ++offsets_[t.r][t.v + 1];
    ++relation_edges_[t.r];
  }
  for (std::size_t r = 0; r < q; ++r) {
    auto& off = offsets_[r];
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    targets_[r].resize(off[n]);
  }
  std::vector<std::vector<std::size_t>> fill(q);
  for (std::size_t r = 0; r < q; ++r)
    fill[r].assign(offsets_[r].begin(), offsets_[r].end() - 1);
  for (const auto& t : edges_) {
    targets_[t.r][fill[t.r][t.u]++] = t.v;
    targets_[t.r][fill[t.r][t.v]++] = t.u;
  }
  for (std::size_t r = 0; r < q; ++r) {
    for (std::size_t u = 0; u < n; ++u) {
      std::sort(targets_[r].begin() + static_cast<std::ptrdiff_t>(offsets_[r][u]),
                targets_[r].begin() + static_cast<std::ptrdiff_t>(offsets_[r][u + 1]));
    }
  }
}

std::optional<NodeId> MultiRelationGraph::find_node(
    std::string_view label) const {
  auto it = node_index_.find(std::string(label));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<RelationId> MultiRelationGraph::find_relation(
    std::string_view label) const {
  auto it = relation_index_.find(std::string(label));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const NodeId> MultiRelationGraph::neighbors(NodeId u,
                                                      RelationId r) const {
  if (r >= relation_count() || u >= node_count())
    throw Error(ErrorCode::kOutOfRange, "neighbors: index out of range");
  const auto& off = offsets_[r];
  return {targets_[r].data() + off[u], off[u + 1] - off[u]};
}

std::size_t MultiRelationGraph::degree(NodeId u) const {
  std::size_t d = 0;
  for (RelationId r = 0; r < relation_count(); ++r) d += degree(u, r);
  return d;
}

std::size_t MultiRelationGraph::relation_edge_count(RelationId r) const {
  if (r >= relation_count())
    throw Error(ErrorCode::kOutOfRange, "relation out of range");
  return relation_edges_[r];
}

bool MultiRelationGraph::has_edge(NodeId u, NodeId v, RelationId r) const {
  if (u == v) return false;
  auto nb = neighbors(u, r);
  return std::binary_search(nb.begin(), nb.end(), v);
}

NodeId GraphBuilder::intern_node(std::string_view label) {
  auto [it, inserted] = node_index_.try_emplace(
      std::string(label), static_cast<NodeId>(nodes_.size()));
  if (inserted) nodes_.emplace_back(label);
  return it->second;
}

RelationId GraphBuilder::intern_relation(std::string_view label) {
  auto [it, inserted] = relation_index_.try_emplace(
      std::string(label), static_cast<RelationId>(relations_.size()));
  if (inserted) relations_.emplace_back(label);
  return it->second;
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v,
                            std::string_view r) {
  if (u == v)
    throw Error(ErrorCode::kInvalidArgument,
                "self-edge on node '" + std::string(u) + "'");
  const NodeId a = intern_node(u);
  const NodeId b = intern_node(v);
  const RelationId rel = intern_relation(r);
  triples_.push_back({a, b, rel});
}

MultiRelationGraph GraphBuilder::build() && {
  return MultiRelationGraph(std::move(nodes_), std::move(relations_),
                            std::move(triples_));
}

MultiRelationGraph load_graph(std::istream& in, GraphFormat format) {
  GraphBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) parse_error(line_no, "invalid UTF-8");
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    if (tokens.size() != 3)
      parse_error(line_no, "expected 3 fields, found " +
                               std::to_string(tokens.size()));
    if (tokens[0] == tokens[1])
      parse_error(line_no, "self-edge on node '" + std::string(tokens[0]) + "'");
    if (format == GraphFormat::kTriples) {
      // Commas separate relations in the relation-list format.
      if (tokens[2].find(',') != std::string_view::npos)
        parse_error(line_no, "relation label contains ','");
      builder.add_edge(tokens[0], tokens[1], tokens[2]);
      continue;
    }
    std::string_view list = tokens[2];
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = list.find(',', start);
      const std::string_view rel = list.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start);
      if (rel.empty()) parse_error(line_no, "empty relation token");
      builder.add_edge(tokens[0], tokens[1], rel);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure");
  return std::move(builder).build();
}

MultiRelationGraph load_graph_string(std::string_view text,
                                     GraphFormat format) {
  std::istringstream in{std::string(text)};
  return load_graph(in, format);
}

MultiRelationGraph load_graph_file(const std::string& path,
                                   GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return load_graph(in, format);
}

void write_graph(std::ostream& out, const MultiRelationGraph& g,
                 GraphFormat format) {
  const auto& edges = g.edges();
  if (format == GraphFormat::kTriples) {
    for (const auto& t : edges) {
      out << g.node_label(t.u) << ' ' << g.node_label(t.v) << ' '
          << g.relation_label(t.r) << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < edges.size();) {
    std::size_t j = i;
    out << g.node_label(edges[i].u) << ' ' << g.node_label(edges[i].v) << ' ';
    while (j < edges.size() && edges[j].u == edges[i].u &&
           edges[j].v == edges[i].v) {
      if (j > i) out << ',';
      out << g.relation_label(edges[j].r);
      ++j;
    }
    out << '\n';
    i = j;
  }
}

std::string graph_to_string(const MultiRelationGraph& g, GraphFormat format) {
  std::ostringstream out;
  write_graph(out, g, format);
  return out.str();
}

MultiRelationGraph relation_view(const MultiRelationGraph& g, RelationId r) {
  if (r >= g.relation_count())
    throw Error(ErrorCode::kOutOfRange,
                "relation " + std::to_string(r) + " out of range (q = " +
                    std::to_string(g.relation_count()) + ")");
  std::vector<Triple> triples;
  triples.reserve(g.relation_edge_count(r));
  for (const auto& t : g.edges()) {
    if (t.r == r) triples.push_back({t.u, t.v, 0});
  }
  return MultiRelationGraph(g.node_labels(), {g.relation_label(r)},
                            std::move(triples));
}

AdjacencyRow adjacency_row(const MultiRelationGraph& g, NodeId u,
                           RelationId r) {
  if (u >= g.node_count())
    throw Error(ErrorCode::kOutOfRange, "node out of range");
  auto nb = g.neighbors(u, r);
  return {u, r, {nb.begin(), nb.end()}};
}

AdjacencyRow concatenated_row(const MultiRelationGraph& g, NodeId u) {
  if (u >= g.node_count())
    throw Error(ErrorCode::kOutOfRange, "node out of range");
  AdjacencyRow row{u, AdjacencyRow::kConcatenated, {}};
  row.columns.reserve(g.degree(u));
  const auto n = static_cast<std::uint32_t>(g.node_count());
  for (RelationId r = 0; r < g.relation_count(); ++r) {
    for (NodeId w : g.neighbors(u, r)) row.columns.push_back(r * n + w);
  }
  return row;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "triples" || name == "plain") return GraphFormat::kTriples;
  if (name == "relation-list") return GraphFormat::kRelationList;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown graph format '" + std::string(name) + "'");
}

}  // namespace mrsum
