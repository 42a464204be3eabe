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

#ifndef MRSUM_MRSUM_H_
#define MRSUM_MRSUM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MRSUM_API __declspec(dllexport)
#else
#define MRSUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mrsum_graph mrsum_graph;
typedef struct mrsum_summary mrsum_summary;
typedef struct mrsum_bundle mrsum_bundle;
typedef struct mrsum_index mrsum_index;

typedef enum mrsum_status {
  MRSUM_OK = 0,
  MRSUM_ERR_INVALID_ARGUMENT = 1,
  MRSUM_ERR_PARSE = 2,
  MRSUM_ERR_IO = 3,
  MRSUM_ERR_OUT_OF_RANGE = 4,
  MRSUM_ERR_CORRUPT = 5,
  MRSUM_ERR_INTERNAL = 6
} mrsum_status;

typedef enum mrsum_format {
  MRSUM_FORMAT_TRIPLES = 0,
  MRSUM_FORMAT_RELATION_LIST = 1
} mrsum_format;

/* Message for the last failed call on this thread; never NULL. */
MRSUM_API const char* mrsum_last_error(void);
MRSUM_API const char* mrsum_version(void);
MRSUM_API void mrsum_set_threads(int threads);
/* Frees strings and arrays returned by this library. */
MRSUM_API void mrsum_free(void* p);

/* Graphs */
MRSUM_API mrsum_status mrsum_graph_load_file(const char* path, mrsum_format format,
                                             mrsum_graph** out);
MRSUM_API mrsum_status mrsum_graph_load_string(const char* text,
                                               mrsum_format format,
                                               mrsum_graph** out);
MRSUM_API void mrsum_graph_free(mrsum_graph* g);
MRSUM_API size_t mrsum_graph_node_count(const mrsum_graph* g);
MRSUM_API size_t mrsum_graph_relation_count(const mrsum_graph* g);
MRSUM_API uint64_t mrsum_graph_edge_count(const mrsum_graph* g);
MRSUM_API mrsum_status mrsum_graph_to_string(const mrsum_graph* g,
                                             mrsum_format format, char** out);
MRSUM_API mrsum_status mrsum_graph_storage_bytes(const mrsum_graph* g,
                                                 mrsum_format format,
                                                 uint64_t* out);

typedef void (*mrsum_edge_fn)(const char* u, const char* v,
                              const char* relation, void* context);
/* Visits every edge in sorted order. */
MRSUM_API mrsum_status mrsum_graph_for_each_edge(const mrsum_graph* g,
                                                 mrsum_edge_fn fn,
                                                 void* context);

/* Summarization */
typedef struct mrsum_options {
  /* greedy, randomized, sweg, kmedian (single relation), two-step, greedy+,
     randomized+, kmedian+, hybrid */
  const char* algorithm;
  /* two-step only */
  const char* single;     /* greedy, randomized, sweg, kmedian */
  const char* aggregator; /* best, balls, agglomerative, furthest, localsearch */
  double balls_alpha;
  int localsearch_passes;
  uint64_t seed;
  uint64_t k;  /* 0 when unset */
  int auto_k;  /* pick k from a relative-size sweep; excludes k */
  int iterations;
} mrsum_options;

MRSUM_API void mrsum_options_init(mrsum_options* options);

typedef struct mrsum_cost {
  uint64_t supernodes;
  uint64_t superedges;
  uint64_t plus;
  uint64_t minus;
  uint64_t total;
  uint64_t edges;
  double relative_size;
} mrsum_cost;

MRSUM_API mrsum_status mrsum_summarize(const mrsum_graph* g,
                                       const mrsum_options* options,
                                       mrsum_summary** out);
MRSUM_API void mrsum_summary_free(mrsum_summary* s);
MRSUM_API mrsum_status mrsum_summary_cost(const mrsum_summary* s, mrsum_cost* out);
/* k handed to a k-Median based method, 0 otherwise. */
MRSUM_API uint64_t mrsum_summary_k_used(const mrsum_summary* s);
MRSUM_API size_t mrsum_summary_relation_count(const mrsum_summary* s);
MRSUM_API const char* mrsum_summary_relation_label(const mrsum_summary* s,
                                                   size_t r);
MRSUM_API mrsum_status mrsum_summary_load_file(const char* path,
                                               mrsum_summary** out);
MRSUM_API mrsum_status mrsum_summary_load_string(const char* text,
                                                 mrsum_summary** out);
MRSUM_API mrsum_status mrsum_summary_save_file(const mrsum_summary* s,
                                               const char* path,
                                               mrsum_format format);
MRSUM_API mrsum_status mrsum_summary_to_string(const mrsum_summary* s,
                                               mrsum_format format,
                                               int include_mapping, char** out);
MRSUM_API mrsum_status mrsum_summary_storage_bytes(const mrsum_summary* s,
                                                   mrsum_format format,
                                                   int include_mapping,
                                                   uint64_t* out);
MRSUM_API mrsum_status mrsum_summary_mapping_bytes(const mrsum_summary* s,
                                                   uint64_t* out);

MRSUM_API mrsum_status mrsum_reconstruct(const mrsum_summary* s,
                                         mrsum_graph** out);
/* *lossless is 1 or 0; *message (optional) describes the first mismatch. */
MRSUM_API mrsum_status mrsum_verify(const mrsum_graph* g, const mrsum_summary* s,
                                    int* lossless, char** message);

/* Queries */
typedef void (*mrsum_neighbor_fn)(const char* node, const char* relation,
                                  void* context);

/* Calls fn once per (neighbor, relation). histogram, when not NULL, receives
   mrsum_summary_relation_count(s) counts. */
MRSUM_API mrsum_status mrsum_query_neighborhood(const mrsum_summary* s,
                                                const char* node,
                                                mrsum_neighbor_fn fn,
                                                void* context,
                                                uint64_t* histogram);
/* Reusable query index; the summary must outlive it. */
MRSUM_API mrsum_status mrsum_index_create(const mrsum_summary* s,
                                          mrsum_index** out);
MRSUM_API void mrsum_index_free(mrsum_index* index);
MRSUM_API mrsum_status mrsum_index_neighborhood(const mrsum_index* index,
                                                const char* node,
                                                mrsum_neighbor_fn fn,
                                                void* context,
                                                uint64_t* histogram);
MRSUM_API mrsum_status mrsum_query_degree(const mrsum_summary* s,
                                          const char* node, uint64_t* out);
/* out receives one score per node, in summary node order. */
MRSUM_API mrsum_status mrsum_query_centrality(const mrsum_summary* s, double* out,
                                              size_t count);
MRSUM_API const char* mrsum_summary_node_label(const mrsum_summary* s, size_t u);
MRSUM_API size_t mrsum_summary_node_count(const mrsum_summary* s);

/* Lowest cost candidate wins, ties to the earliest. totals is optional and
   receives count entries. */
MRSUM_API mrsum_status mrsum_classify(const mrsum_graph* g,
                                      const mrsum_summary* const* candidates,
                                      size_t count, size_t* winner,
                                      uint64_t* totals);

/* k selection */
typedef struct mrsum_sweep_point {
  uint64_t k;
  double relative_size;
  uint64_t total;
} mrsum_sweep_point;

MRSUM_API mrsum_status mrsum_suggest_k(const mrsum_graph* g, uint64_t* out);
/* k_min == 0 selects the default range around the suggested k. *points must
   be released with mrsum_free. */
MRSUM_API mrsum_status mrsum_sweep_k(const mrsum_graph* g, uint64_t k_min,
                                     uint64_t k_max, uint64_t step,
                                     uint64_t seed, mrsum_sweep_point** points,
                                     size_t* count, uint64_t* selected);

/* Per-relation bundles */
MRSUM_API mrsum_status mrsum_bundle_all(const mrsum_graph* g, uint64_t seed,
                                        mrsum_bundle** out);
MRSUM_API void mrsum_bundle_free(mrsum_bundle* b);
MRSUM_API mrsum_status mrsum_bundle_cost(const mrsum_bundle* b, mrsum_cost* out);
MRSUM_API mrsum_status mrsum_bundle_to_string(const mrsum_bundle* b,
                                              mrsum_format format, char** out);
MRSUM_API mrsum_status mrsum_bundle_storage_bytes(const mrsum_bundle* b,
                                                  mrsum_format format,
                                                  uint64_t* out);
MRSUM_API mrsum_status mrsum_bundle_mapping_bytes(const mrsum_bundle* b,
                                                  uint64_t* out);
MRSUM_API mrsum_status mrsum_bundle_reconstruct(const mrsum_bundle* b,
                                                mrsum_graph** out);

/* Exhaustive optimum for tiny graphs. k == 0 searches every partition;
   objective 0 minimizes total cost, 1 minimizes corrections. */
MRSUM_API mrsum_status mrsum_oracle(const mrsum_graph* g, uint64_t k,
                                    int objective, mrsum_summary** out,
                                    uint64_t* examined);

#ifdef __cplusplus
}
#endif

#endif  // MRSUM_MRSUM_H_
