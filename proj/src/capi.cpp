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

#include "mrsum/mrsum.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "mrsum/error.hpp"
#include "mrsum/kselect.hpp"
#include "mrsum/oracle.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/query.hpp"
#include "mrsum/storage.hpp"
#include "mrsum/summarizers.hpp"

struct mrsum_graph {
  mrsum::MultiRelationGraph g;
};

struct mrsum_summary {
  mrsum::Summary s;
  std::uint64_t k_used = 0;
};

struct mrsum_index {
  const mrsum_summary* owner;
  mrsum::SummaryIndex index;
};

struct mrsum_bundle {
  mrsum::SummaryBundle b;
};

namespace {

using namespace mrsum;

thread_local std::string t_error;

mrsum_status fail(mrsum_status status, const std::string& message) {
  t_error = message;
  return status;
}

// Runs fn, mapping exceptions onto status codes.
template <typename Fn>
mrsum_status guarded(Fn&& fn) {
  try {
    fn();
    t_error.clear();
    return MRSUM_OK;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kInvalidArgument: return fail(MRSUM_ERR_INVALID_ARGUMENT, e.what());
      case ErrorCode::kParse: return fail(MRSUM_ERR_PARSE, e.what());
      case ErrorCode::kIo: return fail(MRSUM_ERR_IO, e.what());
      case ErrorCode::kOutOfRange: return fail(MRSUM_ERR_OUT_OF_RANGE, e.what());
      case ErrorCode::kCorrupt: return fail(MRSUM_ERR_CORRUPT, e.what());
    }
    return fail(MRSUM_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MRSUM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MRSUM_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

GraphFormat to_format(mrsum_format f) {
  return f == MRSUM_FORMAT_RELATION_LIST ? GraphFormat::kRelationList
                                         : GraphFormat::kTriples;
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_cost(const CostBreakdown& c, std::uint64_t supernodes, mrsum_cost* out) {
  out->supernodes = supernodes;
  out->superedges = c.superedges;
  out->plus = c.plus;
  out->minus = c.minus;
  out->total = c.total;
  out->edges = c.edges;
  out->relative_size = c.relative_size;
}

NodeId node_of(const SummaryIndex& index, const char* label) {
  require(label != nullptr, "node label is null");
  const auto u = index.find_node(label);
  if (!u)
    throw Error(ErrorCode::kOutOfRange,
                "node '" + std::string(label) + "' not in the summary");
  return *u;
}

std::size_t pick_k(const MultiRelationGraph& g, const mrsum_options& o) {
  if (o.k != 0) return static_cast<std::size_t>(o.k);
  if (o.auto_k) {
    const auto range = default_sweep_range(g.node_count(), suggest_k(g));
    const auto curve = sweep_k(g, range.k_min, range.k_max, 1, o.seed);
    return select_k(curve);
  }
  return suggest_k(g);
}

mrsum_summary* summarize(const MultiRelationGraph& g, const mrsum_options& o) {
  require(o.algorithm != nullptr, "algorithm is null");
  require(!(o.k != 0 && o.auto_k), "k and auto_k are mutually exclusive");
  const std::string algo = o.algorithm;
  auto out = std::make_unique<mrsum_summary>();
  std::optional<std::size_t> k;
  if (o.k != 0) k = static_cast<std::size_t>(o.k);
  const int iterations = o.iterations > 0 ? o.iterations : kDefaultSwegIterations;

  if (algo == "greedy" || algo == "greedy+") {
    require(!o.auto_k, "auto_k applies to k-Median based methods only");
    GreedyOptions go;
    go.k_target = k;
    out->s = algo == "greedy" ? greedy_summarize(g, go).summary
                              : greedy_plus(g, go).summary;
  } else if (algo == "randomized") {
    out->s = randomized_summarize(g, o.seed);
  } else if (algo == "randomized+") {
    out->s = randomized_plus(g, o.seed);
  } else if (algo == "sweg") {
    out->s = sweg_summarize(g, iterations, o.seed);
  } else if (algo == "kmedian" || algo == "kmedian+") {
    if (algo == "kmedian" && g.relation_count() > 1)
      throw Error(ErrorCode::kInvalidArgument,
                  "kmedian needs a single-relation graph; use kmedian+");
    out->k_used = pick_k(g, o);
    out->s = kmedian_plus(g, static_cast<std::size_t>(out->k_used), o.seed);
  } else if (algo == "hybrid") {
    if (o.auto_k) k = pick_k(g, o);
    auto h = hybrid(g, k, o.seed);
    out->k_used = h.k_used;
    out->s = std::move(h.summary);
  } else if (algo == "two-step") {
    TwoStepParams p;
    if (o.single) p.single = parse_single_algorithm(o.single);
    if (o.aggregator) p.aggregator = parse_aggregator(o.aggregator);
    p.aggregate.balls_alpha = o.balls_alpha;
    p.aggregate.localsearch_passes = o.localsearch_passes;
    p.seed = o.seed;
    p.k = k;
    p.sweg_iterations = iterations;
    out->s = two_step(g, p).summary;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + algo + "'");
  }
  return out.release();
}

}  // namespace

extern "C" {

const char* mrsum_last_error(void) { return t_error.c_str(); }

const char* mrsum_version(void) { return "0.1.0"; }

void mrsum_set_threads(int threads) { set_num_threads(threads); }

void mrsum_free(void* p) { std::free(p); }

mrsum_status mrsum_graph_load_file(const char* path, mrsum_format format,
                                   mrsum_graph** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new mrsum_graph{load_graph_file(path, to_format(format))};
  });
}

mrsum_status mrsum_graph_load_string(const char* text, mrsum_format format,
                                     mrsum_graph** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new mrsum_graph{load_graph_string(text, to_format(format))};
  });
}

void mrsum_graph_free(mrsum_graph* g) { delete g; }

size_t mrsum_graph_node_count(const mrsum_graph* g) {
  return g ? g->g.node_count() : 0;
}

size_t mrsum_graph_relation_count(const mrsum_graph* g) {
  return g ? g->g.relation_count() : 0;
}

uint64_t mrsum_graph_edge_count(const mrsum_graph* g) {
  return g ? g->g.edge_count() : 0;
}

mrsum_status mrsum_graph_to_string(const mrsum_graph* g, mrsum_format format,
                                   char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = copy_string(graph_to_string(g->g, to_format(format)));
  });
}

mrsum_status mrsum_graph_storage_bytes(const mrsum_graph* g, mrsum_format format,
                                       uint64_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = storage_bytes(g->g, to_format(format));
  });
}

mrsum_status mrsum_graph_for_each_edge(const mrsum_graph* g, mrsum_edge_fn fn,
                                       void* context) {
  return guarded([&] {
    require(g != nullptr && fn != nullptr, "null argument");
    for (const auto& t : g->g.edges())
      fn(g->g.node_label(t.u).c_str(), g->g.node_label(t.v).c_str(),
         g->g.relation_label(t.r).c_str(), context);
  });
}

void mrsum_options_init(mrsum_options* o) {
  if (o == nullptr) return;
  o->algorithm = "hybrid";
  o->single = "greedy";
  o->aggregator = "furthest";
  o->balls_alpha = AggregateOptions{}.balls_alpha;
  o->localsearch_passes = AggregateOptions{}.localsearch_passes;
  o->seed = 42;
  o->k = 0;
  o->auto_k = 0;
  o->iterations = kDefaultSwegIterations;
}

mrsum_status mrsum_summarize(const mrsum_graph* g, const mrsum_options* options,
                             mrsum_summary** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    mrsum_options defaults;
    mrsum_options_init(&defaults);
    *out = summarize(g->g, options ? *options : defaults);
  });
}

void mrsum_summary_free(mrsum_summary* s) { delete s; }

mrsum_status mrsum_summary_cost(const mrsum_summary* s, mrsum_cost* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    fill_cost(cost(s->s), s->s.supernode_count(), out);
  });
}

uint64_t mrsum_summary_k_used(const mrsum_summary* s) { return s ? s->k_used : 0; }

size_t mrsum_summary_relation_count(const mrsum_summary* s) {
  return s ? s->s.relation_count() : 0;
}

const char* mrsum_summary_relation_label(const mrsum_summary* s, size_t r) {
  if (s == nullptr || r >= s->s.relation_count()) return nullptr;
  return s->s.relation_labels[r].c_str();
}

size_t mrsum_summary_node_count(const mrsum_summary* s) {
  return s ? s->s.node_count() : 0;
}

const char* mrsum_summary_node_label(const mrsum_summary* s, size_t u) {
  if (s == nullptr || u >= s->s.node_count()) return nullptr;
  return s->s.node_labels[u].c_str();
}

mrsum_status mrsum_summary_load_file(const char* path, mrsum_summary** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new mrsum_summary{read_summary_file(path)};
  });
}

mrsum_status mrsum_summary_load_string(const char* text, mrsum_summary** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "null argument");
    *out = new mrsum_summary{read_summary_string(text)};
  });
}

mrsum_status mrsum_summary_save_file(const mrsum_summary* s, const char* path,
                                     mrsum_format format) {
  return guarded([&] {
    require(s != nullptr && path != nullptr, "null argument");
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::kIo, "cannot write '" + std::string(path) + "'");
    write_summary(file, s->s, to_format(format), true);
    if (!file) throw Error(ErrorCode::kIo, "write failure on '" + std::string(path) + "'");
  });
}

mrsum_status mrsum_summary_to_string(const mrsum_summary* s, mrsum_format format,
                                     int include_mapping, char** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = copy_string(summary_to_string(s->s, to_format(format), include_mapping != 0));
  });
}

mrsum_status mrsum_summary_storage_bytes(const mrsum_summary* s,
                                         mrsum_format format,
                                         int include_mapping, uint64_t* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = storage_bytes(s->s, to_format(format), include_mapping != 0);
  });
}

mrsum_status mrsum_summary_mapping_bytes(const mrsum_summary* s, uint64_t* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = mapping_bytes(s->s);
  });
}

mrsum_status mrsum_reconstruct(const mrsum_summary* s, mrsum_graph** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = new mrsum_graph{reconstruct(s->s)};
  });
}

mrsum_status mrsum_verify(const mrsum_graph* g, const mrsum_summary* s,
                          int* lossless, char** message) {
  return guarded([&] {
    require(g != nullptr && s != nullptr && lossless != nullptr, "null argument");
    const auto report = verify_lossless(g->g, s->s);
    *lossless = report.lossless ? 1 : 0;
    if (message) *message = copy_string(report.message);
  });
}

namespace {

void emit(const Summary& s, const SummaryIndex& index, const char* node,
          mrsum_neighbor_fn fn, void* context, uint64_t* histogram) {
  const auto nb = index.neighborhood(node_of(index, node));
  if (fn) {
    for (const auto& x : nb.neighbors)
      fn(s.node_labels[x.node].c_str(), s.relation_labels[x.relation].c_str(),
         context);
  }
  if (histogram) std::copy(nb.histogram.begin(), nb.histogram.end(), histogram);
}

}  // namespace

mrsum_status mrsum_query_neighborhood(const mrsum_summary* s, const char* node,
                                      mrsum_neighbor_fn fn, void* context,
                                      uint64_t* histogram) {
  return guarded([&] {
    require(s != nullptr, "null summary");
    emit(s->s, SummaryIndex(s->s), node, fn, context, histogram);
  });
}

mrsum_status mrsum_index_create(const mrsum_summary* s, mrsum_index** out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    *out = new mrsum_index{s, SummaryIndex(s->s)};
  });
}

void mrsum_index_free(mrsum_index* index) { delete index; }

mrsum_status mrsum_index_neighborhood(const mrsum_index* index, const char* node,
                                      mrsum_neighbor_fn fn, void* context,
                                      uint64_t* histogram) {
  return guarded([&] {
    require(index != nullptr, "null index");
    emit(index->owner->s, index->index, node, fn, context, histogram);
  });
}

mrsum_status mrsum_query_degree(const mrsum_summary* s, const char* node,
                                uint64_t* out) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    const SummaryIndex index(s->s);
    *out = index.degree(node_of(index, node));
  });
}

mrsum_status mrsum_query_centrality(const mrsum_summary* s, double* out,
                                    size_t count) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "null argument");
    require(count == s->s.node_count(), "centrality buffer size mismatch");
    const auto x = SummaryIndex(s->s).eigenvector_centrality();
    std::copy(x.begin(), x.end(), out);
  });
}

mrsum_status mrsum_classify(const mrsum_graph* g,
                            const mrsum_summary* const* candidates, size_t count,
                            size_t* winner, uint64_t* totals) {
  return guarded([&] {
    require(g != nullptr && candidates != nullptr && winner != nullptr,
            "null argument");
    std::vector<ClassifyCandidate> list;
    for (size_t i = 0; i < count; ++i) {
      require(candidates[i] != nullptr, "null candidate");
      list.push_back({std::to_string(i), candidates[i]->s});
    }
    const auto result = classify(g->g, list);
    *winner = result.index;
    if (totals) std::copy(result.totals.begin(), result.totals.end(), totals);
  });
}

mrsum_status mrsum_suggest_k(const mrsum_graph* g, uint64_t* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = suggest_k(g->g);
  });
}

mrsum_status mrsum_sweep_k(const mrsum_graph* g, uint64_t k_min, uint64_t k_max,
                           uint64_t step, uint64_t seed,
                           mrsum_sweep_point** points, size_t* count,
                           uint64_t* selected) {
  return guarded([&] {
    require(g != nullptr && points != nullptr && count != nullptr, "null argument");
    if (k_min == 0) {
      const auto range = default_sweep_range(g->g.node_count(), suggest_k(g->g));
      k_min = range.k_min;
      k_max = range.k_max;
    }
    const auto curve = sweep_k(g->g, k_min, k_max, step == 0 ? 1 : step, seed);
    auto* buf = static_cast<mrsum_sweep_point*>(
        std::malloc(sizeof(mrsum_sweep_point) * std::max<size_t>(curve.size(), 1)));
    if (buf == nullptr) throw std::bad_alloc();
    for (size_t i = 0; i < curve.size(); ++i)
      buf[i] = {curve[i].k, curve[i].relative_size, curve[i].total};
    *points = buf;
    *count = curve.size();
    if (selected) *selected = select_k(curve);
  });
}

mrsum_status mrsum_bundle_all(const mrsum_graph* g, uint64_t seed,
                              mrsum_bundle** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new mrsum_bundle{all_relations_bundle(g->g, {}, seed)};
  });
}

void mrsum_bundle_free(mrsum_bundle* b) { delete b; }

mrsum_status mrsum_bundle_cost(const mrsum_bundle* b, mrsum_cost* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    std::uint64_t supernodes = 0;
    for (const auto& s : b->b.summaries) supernodes += s.supernode_count();
    fill_cost(cost(b->b), supernodes, out);
  });
}

mrsum_status mrsum_bundle_to_string(const mrsum_bundle* b, mrsum_format format,
                                    char** out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = copy_string(bundle_to_string(b->b, to_format(format)));
  });
}

mrsum_status mrsum_bundle_storage_bytes(const mrsum_bundle* b,
                                        mrsum_format format, uint64_t* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = storage_bytes(b->b, to_format(format));
  });
}

mrsum_status mrsum_bundle_mapping_bytes(const mrsum_bundle* b, uint64_t* out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = mapping_bytes(b->b);
  });
}

mrsum_status mrsum_bundle_reconstruct(const mrsum_bundle* b, mrsum_graph** out) {
  return guarded([&] {
    require(b != nullptr && out != nullptr, "null argument");
    *out = new mrsum_graph{reconstruct(b->b)};
  });
}

mrsum_status mrsum_oracle(const mrsum_graph* g, uint64_t k, int objective,
                          mrsum_summary** out, uint64_t* examined) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    std::optional<std::size_t> kk;
    if (k != 0) kk = static_cast<std::size_t>(k);
    const auto r = brute_force_optimal(
        g->g, kk,
        objective == 1 ? OracleObjective::kCorrections : OracleObjective::kTotal);
    if (examined) *examined = r.examined;
    *out = new mrsum_summary{build_summary(g->g, r.partition)};
  });
}

}  // extern "C"
