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

#include "mrsum/summary.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"

namespace mrsum {
namespace {

struct KeyedEdge {
  SupernodeId a;
  SupernodeId b;
  RelationId r;
  NodeId u;
  NodeId v;

  auto key() const { return std::tie(a, b, r, u, v); }
};

// Edges tagged with their (block, block, relation) cell, sorted so each cell
// is a contiguous run.
std::vector<KeyedEdge> keyed_edges(const MultiRelationGraph& g,
                                   const Partition& p) {
  std::vector<KeyedEdge> keyed;
  keyed.reserve(g.edge_count());
  for (const auto& t : g.edges()) {
    SupernodeId a = p.block_of(t.u);
    SupernodeId b = p.block_of(t.v);
    if (a > b) std::swap(a, b);
    keyed.push_back({a, b, t.r, t.u, t.v});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const KeyedEdge& x, const KeyedEdge& y) {
              return x.key() < y.key();
            });
  return keyed;
}

struct Cell {
  SupernodeId a;
  SupernodeId b;
  RelationId r;
  std::size_t begin;  // range into the keyed edge list
  std::size_t end;
};

std::vector<Cell> cells_of(const std::vector<KeyedEdge>& keyed) {
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i + 1;
    while (j < keyed.size() && keyed[j].a == keyed[i].a &&
           keyed[j].b == keyed[i].b && keyed[j].r == keyed[i].r) {
      ++j;
    }
    cells.push_back({keyed[i].a, keyed[i].b, keyed[i].r, i, j});
    i = j;
  }
  return cells;
}

std::uint64_t cell_capacity(const Partition& p, SupernodeId a, SupernodeId b) {
  return pair_capacity(p.members(a).size(), p.members(b).size(), a == b);
}

void check_partition(const MultiRelationGraph& g, const Partition& p) {
  if (p.node_count() != g.node_count())
    throw Error(ErrorCode::kInvalidArgument,
                "partition covers " + std::to_string(p.node_count()) +
                    " nodes, graph has " + std::to_string(g.node_count()));
}

CostBreakdown finish(CostBreakdown c) {
  c.total = c.superedges + c.plus + c.minus;
  c.relative_size = c.edges == 0 ? 0.0
                                 : static_cast<double>(c.total) /
                                       static_cast<double>(c.edges);
  return c;
}

bool covered(const Summary& s, const Triple& t) {
  SupernodeId a = s.partition.block_of(t.u);
  SupernodeId b = s.partition.block_of(t.v);
  if (a > b) std::swap(a, b);
  return std::binary_search(s.superedges.begin(), s.superedges.end(),
                            Superedge{a, b, t.r});
}

std::vector<Triple> explode(const Summary& s) {
  std::vector<Triple> out;
  for (const auto& e : s.superedges) {
    const auto& ma = s.partition.members(e.a);
    const auto& mb = s.partition.members(e.b);
    if (e.a == e.b) {
      for (std::size_t i = 0; i < ma.size(); ++i)
        for (std::size_t j = i + 1; j < ma.size(); ++j)
          out.push_back({ma[i], ma[j], e.r});
    } else {
      for (NodeId u : ma)
        for (NodeId w : mb) out.push_back({std::min(u, w), std::max(u, w), e.r});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t Summary::edge_count() const {
  std::uint64_t m = c_plus.size();
  for (const auto& e : superedges) {
    m += pair_capacity(partition.members(e.a).size(),
                       partition.members(e.b).size(), e.a == e.b);
  }
  return m - c_minus.size();
}

Summary build_summary(const MultiRelationGraph& g, const Partition& p) {
  check_partition(g, p);
  const auto keyed = keyed_edges(g, p);
  const auto cells = cells_of(keyed);

  std::vector<char> keep(cells.size(), 0);
  std::vector<std::vector<Triple>> missing(cells.size());
  parallel_for(cells.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const Cell& cell = cells[c];
      const std::uint64_t present = cell.end - cell.begin;
      if (!keep_superedge(present, cell_capacity(p, cell.a, cell.b))) continue;
      keep[c] = 1;
      const auto& ma = p.members(cell.a);
      const auto& mb = p.members(cell.b);
      auto& out = missing[c];
      if (cell.a == cell.b) {
        for (std::size_t i = 0; i < ma.size(); ++i)
          for (std::size_t j = i + 1; j < ma.size(); ++j) {
            const NodeId u = std::min(ma[i], ma[j]);
            const NodeId w = std::max(ma[i], ma[j]);
            if (!g.has_edge(u, w, cell.r)) out.push_back({u, w, cell.r});
          }
      } else {
        for (NodeId u : ma)
          for (NodeId w : mb) {
            if (!g.has_edge(u, w, cell.r))
              out.push_back({std::min(u, w), std::max(u, w), cell.r});
          }
      }
    }
  });

  Summary s;
  s.node_labels = g.node_labels();
  s.relation_labels = g.relation_labels();
  s.partition = p;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    if (keep[c]) {
      s.superedges.push_back({cell.a, cell.b, cell.r});
      s.c_minus.insert(s.c_minus.end(), missing[c].begin(), missing[c].end());
    } else {
      for (std::size_t i = cell.begin; i < cell.end; ++i)
        s.c_plus.push_back({keyed[i].u, keyed[i].v, keyed[i].r});
    }
  }
  std::sort(s.c_plus.begin(), s.c_plus.end());
  std::sort(s.c_minus.begin(), s.c_minus.end());
  return s;
}

CostBreakdown partition_cost(const MultiRelationGraph& g, const Partition& p) {
  check_partition(g, p);
  const auto keyed = keyed_edges(g, p);
  CostBreakdown c;
  c.edges = g.edge_count();
  for (const auto& cell : cells_of(keyed)) {
    const std::uint64_t present = cell.end - cell.begin;
    const std::uint64_t capacity = cell_capacity(p, cell.a, cell.b);
    if (keep_superedge(present, capacity)) {
      ++c.superedges;
      c.minus += capacity - present;
    } else {
      c.plus += present;
    }
  }
  return finish(c);
}

CostBreakdown cost(const Summary& s) {
  CostBreakdown c;
  c.superedges = s.superedges.size();
  c.plus = s.c_plus.size();
  c.minus = s.c_minus.size();
  c.edges = s.edge_count();
  return finish(c);
}

std::uint64_t correction_size_formula(const MultiRelationGraph& g,
                                      const Partition& p) {
  check_partition(g, p);
  std::uint64_t total = 0;
  for (const auto& cell : cells_of(keyed_edges(g, p))) {
    const std::uint64_t present = cell.end - cell.begin;
    const std::uint64_t capacity = cell_capacity(p, cell.a, cell.b);
    total += std::min(present, capacity - present);
  }
  return total;
}

Rational l1_reconstruction_error(const MultiRelationGraph& g,
                                 const Partition& p) {
  check_partition(g, p);
  Rational total = 0;
  for (const auto& cell : cells_of(keyed_edges(g, p))) {
    const std::uint64_t present = cell.end - cell.begin;
    const std::uint64_t capacity = cell_capacity(p, cell.a, cell.b);
    total += Rational(4 * present * (capacity - present), capacity);
  }
  return total;
}

MultiRelationGraph reconstruct(const Summary& s) {
  const auto exploded = explode(s);
  if (!std::includes(exploded.begin(), exploded.end(), s.c_minus.begin(),
                     s.c_minus.end())) {
    throw Error(ErrorCode::kCorrupt,
                "C- contains an edge no superedge produces");
  }
  std::vector<Triple> kept;
  kept.reserve(exploded.size());
  std::set_difference(exploded.begin(), exploded.end(), s.c_minus.begin(),
                      s.c_minus.end(), std::back_inserter(kept));
  std::vector<Triple> edges;
  edges.reserve(kept.size() + s.c_plus.size());
  std::set_union(kept.begin(), kept.end(), s.c_plus.begin(), s.c_plus.end(),
                 std::back_inserter(edges));
  return MultiRelationGraph(s.node_labels, s.relation_labels, std::move(edges));
}

LosslessReport verify_lossless(const MultiRelationGraph& g, const Summary& s) {
  LosslessReport report;
  MultiRelationGraph rebuilt;
  try {
    validate_summary(s);
    rebuilt = reconstruct(s);
  } catch (const Error& e) {
    report.message = e.what();
    return report;
  }
  using Labeled = std::array<std::string, 3>;
  auto labeled = [](const MultiRelationGraph& h) {
    std::vector<Labeled> out;
    out.reserve(h.edge_count());
    for (const auto& t : h.edges()) {
      std::string u = h.node_label(t.u);
      std::string v = h.node_label(t.v);
      if (v < u) std::swap(u, v);
      out.push_back({std::move(u), std::move(v), h.relation_label(t.r)});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (rebuilt.node_labels() == g.node_labels() &&
      rebuilt.relation_labels() == g.relation_labels() &&
      rebuilt.edges() == g.edges()) {
    report.lossless = true;
    return report;
  }
  const auto want = labeled(g);
  const auto got = labeled(rebuilt);
  std::vector<Labeled> missing;
  std::vector<Labeled> extra;
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(missing));
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(extra));
  // Triples are reported in the graph's index space where labels resolve.
  auto to_triple = [&](const Labeled& l, const MultiRelationGraph& h) {
    Triple t{*h.find_node(l[0]), *h.find_node(l[1]), *h.find_relation(l[2])};
    if (t.u > t.v) std::swap(t.u, t.v);
    return t;
  };
  for (const auto& l : missing) report.missing.push_back(to_triple(l, g));
  for (const auto& l : extra) report.extra.push_back(to_triple(l, rebuilt));
  report.lossless = missing.empty() && extra.empty();
  std::ostringstream msg;
  for (const auto& l : missing)
    msg << "missing " << l[0] << ' ' << l[1] << ' ' << l[2] << '\n';
  for (const auto& l : extra)
    msg << "extra " << l[0] << ' ' << l[1] << ' ' << l[2] << '\n';
  report.message = msg.str();
  return report;
}

void validate_summary(const Summary& s) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::kCorrupt, m); };
  const std::size_t n = s.node_count();
  const std::size_t q = s.relation_count();
  const std::size_t k = s.supernode_count();
  if (s.partition.node_count() != n) fail("mapping does not cover all nodes");
  for (std::size_t i = 0; i < s.superedges.size(); ++i) {
    const auto& e = s.superedges[i];
    if (e.a > e.b || e.b >= k || e.r >= q) fail("superedge out of range");
    if (i > 0 && !(s.superedges[i - 1] < e)) fail("superedges not canonical");
    if (e.a == e.b && s.partition.members(e.a).size() < 2)
      fail("self-loop on a singleton supernode");
  }
  auto check_list = [&](const std::vector<Triple>& list, bool want_covered,
                        const char* name) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& t = list[i];
      if (t.u >= t.v || t.v >= n || t.r >= q)
        fail(std::string(name) + " triple out of range");
      if (i > 0 && !(list[i - 1] < t))
        fail(std::string(name) + " not canonical");
      if (covered(s, t) != want_covered)
        fail(std::string(name) + (want_covered
                                      ? " edge not covered by a superedge"
                                      : " edge covered by a superedge"));
    }
  };
  check_list(s.c_plus, false, "C+");
  check_list(s.c_minus, true, "C-");
}

Partition partition_for_graph(const Summary& s, const MultiRelationGraph& g) {
  if (s.node_count() != g.node_count())
    throw Error(ErrorCode::kInvalidArgument,
                "partition covers " + std::to_string(s.node_count()) +
                    " nodes, graph has " + std::to_string(g.node_count()));
  std::vector<std::uint32_t> labels(g.node_count(), UINT32_MAX);
  for (NodeId i = 0; i < s.node_count(); ++i) {
    auto idx = g.find_node(s.node_labels[i]);
    if (!idx)
      throw Error(ErrorCode::kInvalidArgument,
                  "node '" + s.node_labels[i] + "' is not in the graph");
    labels[*idx] = s.partition.block_of(i);
  }
  return Partition::from_labels(labels);
}

CostBreakdown summarize_with_partition_cost(const MultiRelationGraph& g,
                                            const Summary& foreign) {
  return partition_cost(g, partition_for_graph(foreign, g));
}

void write_summary(std::ostream& out, const Summary& s, GraphFormat format,
                   bool include_mapping) {
  const bool grouped = format == GraphFormat::kRelationList;
  out << "[RELATIONS]\n";
  for (const auto& r : s.relation_labels) out << r << '\n';
  if (include_mapping) {
    out << "[MAPPING]\n";
    for (NodeId u = 0; u < s.node_count(); ++u)
      out << s.node_labels[u] << ' ' << s.partition.block_of(u) << '\n';
  }
  out << "[SUPEREDGES]\n";
  for (std::size_t i = 0; i < s.superedges.size();) {
    const auto& e = s.superedges[i];
    out << e.a << ' ' << e.b << ' ' << s.relation_labels[e.r];
    std::size_t j = i + 1;
    if (grouped) {
      for (; j < s.superedges.size() && s.superedges[j].a == e.a &&
             s.superedges[j].b == e.b;
           ++j) {
        out << ',' << s.relation_labels[s.superedges[j].r];
      }
    }
    out << '\n';
    i = j;
  }
  auto corrections = [&](const std::vector<Triple>& list) {
    for (std::size_t i = 0; i < list.size();) {
      const auto& t = list[i];
      out << s.node_labels[t.u] << ' ' << s.node_labels[t.v] << ' '
          << s.relation_labels[t.r];
      std::size_t j = i + 1;
      if (grouped) {
        for (; j < list.size() && list[j].u == t.u && list[j].v == t.v; ++j)
          out << ',' << s.relation_labels[list[j].r];
      }
      out << '\n';
      i = j;
    }
  };
  out << "[CPLUS]\n";
  corrections(s.c_plus);
  out << "[CMINUS]\n";
  corrections(s.c_minus);
}

std::string summary_to_string(const Summary& s, GraphFormat format,
                              bool include_mapping) {
  std::ostringstream out;
  write_summary(out, s, format, include_mapping);
  return out.str();
}

Summary read_summary(std::istream& in) {
  enum class Section { kNone, kRelations, kMapping, kSuperedges, kPlus, kMinus };
  Section section = Section::kNone;
  std::vector<std::string> relations;
  std::unordered_map<std::string, RelationId> relation_index;
  std::vector<std::string> nodes;
  std::unordered_map<std::string, NodeId> node_index;
  std::vector<std::uint32_t> file_blocks;
  std::vector<std::array<std::uint32_t, 3>> raw_superedges;
  std::vector<Triple> plus;
  std::vector<Triple> minus;
  bool saw_mapping = false;

  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& m) -> void {
    throw Error(ErrorCode::kParse,
                "summary line " + std::to_string(line_no) + ": " + m);
  };
  auto relation_of = [&](std::string_view token) {
    auto it = relation_index.find(std::string(token));
    if (it != relation_index.end()) return it->second;
    const auto id = static_cast<RelationId>(relations.size());
    relations.emplace_back(token);
    relation_index.emplace(relations.back(), id);
    return id;
  };
  auto for_relations = [&](std::string_view list, auto&& fn) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = list.find(',', start);
      const auto tok = list.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
      if (tok.empty()) fail("empty relation token");
      fn(relation_of(tok));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  };
  auto parse_u32 = [&](std::string_view tok) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      fail("expected an integer, found '" + std::string(tok) + "'");
    return v;
  };
  auto node_of = [&](std::string_view tok) {
    auto it = node_index.find(std::string(tok));
    if (it == node_index.end())
      fail("unknown node '" + std::string(tok) + "'");
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok.size() == 1 && tok[0].front() == '[') {
      if (tok[0] == "[RELATIONS]") section = Section::kRelations;
      else if (tok[0] == "[MAPPING]") section = Section::kMapping, saw_mapping = true;
      else if (tok[0] == "[SUPEREDGES]") section = Section::kSuperedges;
      else if (tok[0] == "[CPLUS]") section = Section::kPlus;
      else if (tok[0] == "[CMINUS]") section = Section::kMinus;
      else fail("unknown section " + tok[0]);
      continue;
    }
    switch (section) {
      case Section::kNone:
        fail("content before the first section header");
        break;
      case Section::kRelations:
        if (tok.size() != 1) fail("expected one relation label");
        if (relation_index.count(tok[0])) fail("duplicate relation " + tok[0]);
        relation_of(tok[0]);
        break;
      case Section::kMapping: {
        if (tok.size() != 2) fail("expected 'node supernode'");
        if (!node_index.emplace(tok[0], static_cast<NodeId>(nodes.size())).second)
          fail("duplicate node " + tok[0]);
        nodes.push_back(tok[0]);
        file_blocks.push_back(parse_u32(tok[1]));
        break;
      }
      case Section::kSuperedges: {
        if (tok.size() != 3) fail("expected 'U W r'");
        const auto a = parse_u32(tok[0]);
        const auto b = parse_u32(tok[1]);
        for_relations(tok[2], [&](RelationId r) {
          raw_superedges.push_back({a, b, r});
        });
        break;
      }
      case Section::kPlus:
      case Section::kMinus: {
        if (tok.size() != 3) fail("expected 'u v r'");
        NodeId u = node_of(tok[0]);
        NodeId v = node_of(tok[1]);
        if (u == v) fail("self-edge correction");
        if (u > v) std::swap(u, v);
        auto& list = section == Section::kPlus ? plus : minus;
        for_relations(tok[2], [&](RelationId r) { list.push_back({u, v, r}); });
        break;
      }
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failure");
  if (!saw_mapping)
    throw Error(ErrorCode::kCorrupt, "summary has no [MAPPING] section");

  // File supernode ids must be contiguous; renumber into canonical order.
  std::size_t k = 0;
  for (auto b : file_blocks) k = std::max<std::size_t>(k, b + 1);
  std::vector<SupernodeId> canonical(k, UINT32_MAX);
  Summary s;
  s.partition = Partition::from_labels(file_blocks);
  if (s.partition.block_count() != k)
    throw Error(ErrorCode::kCorrupt, "supernode ids are not contiguous");
  for (NodeId u = 0; u < file_blocks.size(); ++u)
    canonical[file_blocks[u]] = s.partition.block_of(u);
  for (const auto& [a, b, r] : raw_superedges) {
    if (a >= k || b >= k)
      throw Error(ErrorCode::kCorrupt, "superedge references unknown supernode");
    SupernodeId ca = canonical[a];
    SupernodeId cb = canonical[b];
    if (ca > cb) std::swap(ca, cb);
    s.superedges.push_back({ca, cb, r});
  }
  s.node_labels = std::move(nodes);
  s.relation_labels = std::move(relations);
  std::sort(s.superedges.begin(), s.superedges.end());
  std::sort(plus.begin(), plus.end());
  std::sort(minus.begin(), minus.end());
  s.c_plus = std::move(plus);
  s.c_minus = std::move(minus);
  validate_summary(s);
  return s;
}

Summary read_summary_string(const std::string& text) {
  std::istringstream in(text);
  return read_summary(in);
}

Summary read_summary_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_summary(in);
}

void write_summary_file(const std::string& path, const Summary& s) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  write_summary(out, s);
  if (!out) throw Error(ErrorCode::kIo, "write failure on '" + path + "'");
}

}  // namespace mrsum
