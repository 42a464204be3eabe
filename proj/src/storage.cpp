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

#include "mrsum/storage.hpp"

#include <istream>
#include <sstream>
#include <unordered_map>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {
namespace {

std::uint64_t digits(std::uint64_t x) {
  std::uint64_t d = 1;
  while (x >= 10) {
    x /= 10;
    ++d;
  }
  return d;
}

// Bytes for a sorted list of lines "<head> <rel>[,<rel>...]\n", where
// same_head(i, j) says two entries share a line in the grouped format.
template <typename List, typename Head, typename Same, typename Rel>
std::uint64_t list_bytes(const List& list, bool grouped, Head head, Same same,
                         Rel rel) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < list.size();) {
    total += head(list[i]) + 1 + rel(list[i]) + 1;
    std::size_t j = i + 1;
    if (grouped) {
      for (; j < list.size() && same(list[i], list[j]); ++j)
        total += 1 + rel(list[j]);
    }
    i = j;
  }
  return total;
}

}  // namespace

std::uint64_t storage_bytes(const MultiRelationGraph& g, GraphFormat format) {
  return list_bytes(
      g.edges(), format == GraphFormat::kRelationList,
      [&](const Triple& t) {
        return g.node_label(t.u).size() + 1 + g.node_label(t.v).size();
      },
      [](const Triple& a, const Triple& b) { return a.u == b.u && a.v == b.v; },
      [&](const Triple& t) { return g.relation_label(t.r).size(); });
}

std::uint64_t mapping_bytes(const Summary& s) {
  std::uint64_t total = std::string_view("[MAPPING]\n").size();
  for (NodeId u = 0; u < s.node_count(); ++u)
    total += s.node_labels[u].size() + 1 + digits(s.partition.block_of(u)) + 1;
  return total;
}

std::uint64_t storage_bytes(const Summary& s, GraphFormat format,
                            bool include_mapping) {
  const bool grouped = format == GraphFormat::kRelationList;
  std::uint64_t total = std::string_view("[RELATIONS]\n").size();
  for (const auto& r : s.relation_labels) total += r.size() + 1;
  if (include_mapping) total += mapping_bytes(s);
  auto rel = [&](const auto& x) { return s.relation_labels[x.r].size(); };
  total += std::string_view("[SUPEREDGES]\n").size();
  total += list_bytes(
      s.superedges, grouped,
      [](const Superedge& e) { return digits(e.a) + 1 + digits(e.b); },
      [](const Superedge& a, const Superedge& b) {
        return a.a == b.a && a.b == b.b;
      },
      rel);
  auto triple_head = [&](const Triple& t) {
    return s.node_labels[t.u].size() + 1 + s.node_labels[t.v].size();
  };
  auto same_pair = [](const Triple& a, const Triple& b) {
    return a.u == b.u && a.v == b.v;
  };
  total += std::string_view("[CPLUS]\n").size();
  total += list_bytes(s.c_plus, grouped, triple_head, same_pair, rel);
  total += std::string_view("[CMINUS]\n").size();
  total += list_bytes(s.c_minus, grouped, triple_head, same_pair, rel);
  return total;
}

SummaryBundle all_relations_bundle(const MultiRelationGraph& g,
                                   std::span<const std::size_t> k_per_relation,
                                   std::uint64_t seed) {
  const std::size_t q = g.relation_count();
  if (!k_per_relation.empty() && k_per_relation.size() != q)
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(q) + " k values, got " +
                    std::to_string(k_per_relation.size()));
  SummaryBundle b;
  b.summaries.resize(q);
  parallel_for(q, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const auto view = relation_view(g, static_cast<RelationId>(r));
      const std::size_t k =
          k_per_relation.empty()
              ? greedy_summarize(view).summary.partition.block_count()
              : k_per_relation[r];
      b.summaries[r] = kmedian_summarize(view, k, seed + r);
    }
  });
  return b;
}

std::uint64_t storage_bytes(const SummaryBundle& b, GraphFormat format) {
  std::uint64_t total = 0;
  for (const auto& s : b.summaries) total += storage_bytes(s, format, true);
  return total;
}

std::uint64_t mapping_bytes(const SummaryBundle& b) {
  std::uint64_t total = 0;
  for (const auto& s : b.summaries) total += mapping_bytes(s);
  return total;
}

CostBreakdown cost(const SummaryBundle& b) {
  CostBreakdown out;
  for (const auto& s : b.summaries) {
    const auto c = cost(s);
    out.superedges += c.superedges;
    out.plus += c.plus;
    out.minus += c.minus;
    out.total += c.total;
    out.edges += c.edges;
  }
  out.relative_size = out.edges == 0 ? 0.0
                                     : static_cast<double>(out.total) /
                                           static_cast<double>(out.edges);
  return out;
}

MultiRelationGraph reconstruct(const SummaryBundle& b) {
  GraphBuilder builder;
  for (const auto& s : b.summaries) {
    for (const auto& label : s.node_labels) builder.intern_node(label);
    for (const auto& label : s.relation_labels) builder.intern_relation(label);
  }
  for (const auto& s : b.summaries) {
    const auto part = reconstruct(s);
    for (const auto& t : part.edges())
      builder.add_edge(part.node_label(t.u), part.node_label(t.v),
                       part.relation_label(t.r));
  }
  return std::move(builder).build();
}

void write_bundle(std::ostream& out, const SummaryBundle& b, GraphFormat format) {
  for (const auto& s : b.summaries) write_summary(out, s, format, true);
}

std::string bundle_to_string(const SummaryBundle& b, GraphFormat format) {
  std::ostringstream out;
  write_bundle(out, b, format);
  return out.str();
}

SummaryBundle read_bundle(std::istream& in) {
  SummaryBundle b;
  std::string chunk;
  std::string line;
  auto flush = [&] {
    if (!chunk.empty()) b.summaries.push_back(read_summary_string(chunk));
    chunk.clear();
  };
  while (std::getline(in, line)) {
    if (line == "[RELATIONS]") flush();
    chunk += line;
    chunk += '\n';
  }
  flush();
  return b;
}

SummaryBundle read_bundle_string(const std::string& text) {
  std::istringstream in(text);
  return read_bundle(in);
}

}  // namespace mrsum
