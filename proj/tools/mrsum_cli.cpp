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

// Command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mrsum/mrsum.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kIo = 3 };

// Thrown to unwind with an exit code after printing a message.
struct Failure {
  int code;
};

int exit_code(mrsum_status status) {
  switch (status) {
    case MRSUM_OK: return kOk;
    case MRSUM_ERR_IO:
    case MRSUM_ERR_PARSE:
    case MRSUM_ERR_CORRUPT: return kIo;
    default: return kUsage;
  }
}

void check(mrsum_status status) {
  if (status == MRSUM_OK) return;
  std::cerr << "error: " << mrsum_last_error() << '\n';
  throw Failure{exit_code(status)};
}

struct GraphDeleter {
  void operator()(mrsum_graph* g) const { mrsum_graph_free(g); }
};
struct SummaryDeleter {
  void operator()(mrsum_summary* s) const { mrsum_summary_free(s); }
};
struct BundleDeleter {
  void operator()(mrsum_bundle* b) const { mrsum_bundle_free(b); }
};
struct IndexDeleter {
  void operator()(mrsum_index* i) const { mrsum_index_free(i); }
};
using GraphPtr = std::unique_ptr<mrsum_graph, GraphDeleter>;
using SummaryPtr = std::unique_ptr<mrsum_summary, SummaryDeleter>;
using BundlePtr = std::unique_ptr<mrsum_bundle, BundleDeleter>;
using IndexPtr = std::unique_ptr<mrsum_index, IndexDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  mrsum_free(s);
  return out;
}

mrsum_format format_of(const std::string& name) {
  return name == "relation-list" ? MRSUM_FORMAT_RELATION_LIST
                                 : MRSUM_FORMAT_TRIPLES;
}

GraphPtr load_graph(const std::string& path, const std::string& format) {
  mrsum_graph* g = nullptr;
  check(mrsum_graph_load_file(path.c_str(), format_of(format), &g));
  return GraphPtr(g);
}

SummaryPtr load_summary(const std::string& path) {
  mrsum_summary* s = nullptr;
  check(mrsum_summary_load_file(path.c_str(), &s));
  return SummaryPtr(s);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    throw Failure{kIo};
  }
}

// Ordered key=value report, optionally rendered as one JSON object.
class Report {
 public:
  template <typename T>
  void add(const std::string& key, const T& value) {
    if (!json_.contains(key)) keys_.push_back(key);
    json_[key] = value;
  }
  void add_cost(const mrsum_cost& c) {
    add("supernodes", c.supernodes);
    add("superedges", c.superedges);
    add("corrections_plus", c.plus);
    add("corrections_minus", c.minus);
    add("total", c.total);
    add("edges", c.edges);
    add("relative_size", c.relative_size);
  }
  void print(bool as_json) const {
    if (as_json) {
      nlohmann::ordered_json out;
      for (const auto& k : keys_) out[k] = json_.at(k);
      std::cout << out.dump() << '\n';
      return;
    }
    for (const auto& k : keys_) {
      const auto& v = json_.at(k);
      std::cout << k << '=' << (v.is_string() ? v.get<std::string>() : v.dump())
                << '\n';
    }
  }

 private:
  std::vector<std::string> keys_;
  nlohmann::json json_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

struct Common {
  std::string input;
  std::string format = "triples";
  std::string output;
  int threads = 1;
  bool json = false;
};

void add_input(CLI::App* cmd, Common& c, bool required = true) {
  auto* opt = cmd->add_option("--input,-i", c.input, "Graph edge list")
                  ->check(CLI::ExistingFile);
  if (required) opt->required();
  cmd->add_option("--format", c.format, "Graph file format")
      ->check(CLI::IsMember({"triples", "plain", "relation-list"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossless multi-relation graph summarization"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--json", c.json, "Print the report as JSON");

  // summarize
  auto* summarize = app.add_subcommand("summarize", "Summarize a graph");
  add_input(summarize, c);
  std::string algo = "hybrid";
  std::string single = "greedy";
  std::string agg = "furthest";
  double balls_alpha = 0.25;
  int ls_passes = 10;
  std::uint64_t k = 0;
  bool auto_k = false;
  std::uint64_t seed = 42;
  int iterations = 20;
  std::string out_format = "triples";
  summarize->add_option("--algo", algo)->check(CLI::IsMember(
      {"greedy", "randomized", "sweg", "kmedian", "two-step", "greedy+",
       "randomized+", "kmedian+", "hybrid"}));
  summarize->add_option("--single", single, "Per-relation algorithm for two-step")
      ->check(CLI::IsMember({"greedy", "randomized", "sweg", "kmedian"}));
  summarize->add_option("--agg", agg, "Aggregator for two-step")
      ->check(CLI::IsMember({"best", "balls", "agglomerative", "furthest", "localsearch"}));
  summarize->add_option("--balls-alpha", balls_alpha)->check(CLI::Range(0.0, 0.5));
  summarize->add_option("--ls-passes", ls_passes)->check(CLI::NonNegativeNumber);
  auto* k_opt = summarize->add_option("--k", k, "Number of supernodes")
                    ->check(CLI::PositiveNumber);
  summarize->add_flag("--auto-k", auto_k, "Pick k from a relative-size sweep")
      ->excludes(k_opt);
  summarize->add_option("--seed", seed, "Random seed");
  summarize->add_option("--iterations", iterations, "SWeG rounds")
      ->check(CLI::PositiveNumber);
  summarize->add_option("--output,-o", c.output, "Summary file to write");
  summarize->add_option("--out-format", out_format)
      ->check(CLI::IsMember({"triples", "relation-list"}));

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "Expand a summary");
  std::string summary_path;
  reconstruct->add_option("--summary,-s", summary_path)->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--output,-o", c.output);
  reconstruct->add_option("--format", c.format)
      ->check(CLI::IsMember({"triples", "plain", "relation-list"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Check a summary is lossless");
  add_input(verify, c);
  verify->add_option("--summary,-s", summary_path)->required()->check(CLI::ExistingFile);

  // stats
  auto* stats = app.add_subcommand("stats", "Sizes of a graph or summary");
  add_input(stats, c, false);
  stats->add_option("--summary,-s", summary_path)->check(CLI::ExistingFile);

  // query
  auto* query = app.add_subcommand("query", "Answer queries from a summary");
  std::string kind = "neighborhood";
  std::string node;
  bool histogram = false;
  bool bench = false;
  query->add_option("kind", kind)->check(
      CLI::IsMember({"neighborhood", "degree", "centrality"}));
  query->add_option("--summary,-s", summary_path)->required()->check(CLI::ExistingFile);
  query->add_option("--node,-n", node);
  query->add_flag("--histogram", histogram, "Per-relation neighbor counts");
  query->add_flag("--bench", bench,
                  "Time summary queries against reconstruction plus scan");

  // classify
  auto* classify = app.add_subcommand("classify", "Pick the cheapest candidate summary");
  add_input(classify, c);
  std::vector<std::string> candidates;
  classify->add_option("--candidates", candidates)->required()->check(CLI::ExistingFile);

  // sweep-k
  auto* sweep = app.add_subcommand("sweep-k", "Relative size over a range of k");
  add_input(sweep, c);
  std::uint64_t k_min = 0;
  std::uint64_t k_max = 0;
  std::uint64_t step = 1;
  sweep->add_option("--k-min", k_min);
  sweep->add_option("--k-max", k_max);
  sweep->add_option("--step", step)->check(CLI::PositiveNumber);
  sweep->add_option("--seed", seed);
  sweep->add_option("--output,-o", c.output, "CSV file; standard output if absent");

  // bundle-all
  auto* bundle = app.add_subcommand("bundle-all", "One k-Median summary per relation");
  add_input(bundle, c);
  bundle->add_option("--seed", seed);
  bundle->add_option("--output,-o", c.output);
  bundle->add_option("--out-format", out_format)
      ->check(CLI::IsMember({"triples", "relation-list"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for tiny graphs");
  add_input(oracle, c);
  std::string objective = "total";
  oracle->add_option("--k", k)->check(CLI::PositiveNumber);
  oracle->add_option("--objective", objective)
      ->check(CLI::IsMember({"total", "corrections"}));
  oracle->add_option("--output,-o", c.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  mrsum_set_threads(c.threads);

  try {
    Report report;
    if (summarize->parsed()) {
      if (auto_k && algo != "kmedian" && algo != "kmedian+" && algo != "hybrid") {
        std::cerr << "error: --auto-k applies to kmedian, kmedian+ and hybrid\n";
        return kUsage;
      }
      auto g = load_graph(c.input, c.format);
      mrsum_options o;
      mrsum_options_init(&o);
      o.algorithm = algo.c_str();
      o.single = single.c_str();
      o.aggregator = agg.c_str();
      o.balls_alpha = balls_alpha;
      o.localsearch_passes = ls_passes;
      o.seed = seed;
      o.k = k;
      o.auto_k = auto_k ? 1 : 0;
      o.iterations = iterations;
      const auto start = std::chrono::steady_clock::now();
      mrsum_summary* raw = nullptr;
      check(mrsum_summarize(g.get(), &o, &raw));
      SummaryPtr s(raw);
      const double ms = elapsed_ms(start);
      mrsum_cost cost;
      check(mrsum_summary_cost(s.get(), &cost));
      report.add("algorithm", algo);
      if (algo == "two-step") {
        report.add("single", single);
        report.add("aggregator", agg);
      }
      report.add("seed", seed);
      if (mrsum_summary_k_used(s.get()) != 0)
        report.add("k", mrsum_summary_k_used(s.get()));
      report.add("threads", c.threads);
      report.add_cost(cost);
      report.add("wall_ms", ms);
      if (!c.output.empty()) {
        check(mrsum_summary_save_file(s.get(), c.output.c_str(), format_of(out_format)));
        report.add("output", c.output);
      }
    } else if (reconstruct->parsed()) {
      auto s = load_summary(summary_path);
      mrsum_graph* raw = nullptr;
      check(mrsum_reconstruct(s.get(), &raw));
      GraphPtr g(raw);
      char* text = nullptr;
      check(mrsum_graph_to_string(g.get(), format_of(c.format), &text));
      write_text(c.output, take(text));
      if (c.output.empty() || c.output == "-") return kOk;
      report.add("edges", mrsum_graph_edge_count(g.get()));
      report.add("output", c.output);
    } else if (verify->parsed()) {
      auto g = load_graph(c.input, c.format);
      auto s = load_summary(summary_path);
      int lossless = 0;
      char* message = nullptr;
      check(mrsum_verify(g.get(), s.get(), &lossless, &message));
      const auto text = take(message);
      report.add("lossless", lossless != 0);
      if (!lossless) report.add("message", text);
      report.print(c.json);
      return lossless ? kOk : kVerifyFailed;
    } else if (stats->parsed()) {
      if (c.input.empty() && summary_path.empty()) {
        std::cerr << "error: stats needs --input or --summary\n";
        return kUsage;
      }
      if (!c.input.empty()) {
        auto g = load_graph(c.input, c.format);
        std::uint64_t plain = 0;
        std::uint64_t grouped = 0;
        check(mrsum_graph_storage_bytes(g.get(), MRSUM_FORMAT_TRIPLES, &plain));
        check(mrsum_graph_storage_bytes(g.get(), MRSUM_FORMAT_RELATION_LIST, &grouped));
        report.add("nodes", mrsum_graph_node_count(g.get()));
        report.add("relations", mrsum_graph_relation_count(g.get()));
        report.add("edges", mrsum_graph_edge_count(g.get()));
        report.add("graph_bytes_plain", plain);
        report.add("graph_bytes_relation_list", grouped);
      }
      if (!summary_path.empty()) {
        auto s = load_summary(summary_path);
        mrsum_cost cost;
        check(mrsum_summary_cost(s.get(), &cost));
        std::uint64_t plain = 0;
        std::uint64_t grouped = 0;
        std::uint64_t mapping = 0;
        check(mrsum_summary_storage_bytes(s.get(), MRSUM_FORMAT_TRIPLES, 1, &plain));
        check(mrsum_summary_storage_bytes(s.get(), MRSUM_FORMAT_RELATION_LIST, 1, &grouped));
        check(mrsum_summary_mapping_bytes(s.get(), &mapping));
        report.add_cost(cost);
        report.add("summary_bytes_plain", plain);
        report.add("summary_bytes_relation_list", grouped);
        report.add("mapping_bytes", mapping);
      }
    } else if (query->parsed()) {
      auto s = load_summary(summary_path);
      mrsum_index* raw = nullptr;
      check(mrsum_index_create(s.get(), &raw));
      IndexPtr index(raw);
      if (kind == "centrality") {
        std::vector<double> x(mrsum_summary_node_count(s.get()));
        check(mrsum_query_centrality(s.get(), x.data(), x.size()));
        for (std::size_t u = 0; u < x.size(); ++u)
          std::printf("%s %.10g\n", mrsum_summary_node_label(s.get(), u), x[u]);
        return kOk;
      }
      if (node.empty()) {
        std::cerr << "error: --node is required for " << kind << '\n';
        return kUsage;
      }
      const std::size_t q = mrsum_summary_relation_count(s.get());
      std::vector<std::uint64_t> hist(q);
      std::vector<std::pair<std::string, std::string>> found;
      auto collect = [](const char* v, const char* r, void* ctx) {
        static_cast<std::vector<std::pair<std::string, std::string>>*>(ctx)
            ->emplace_back(v, r);
      };
      check(mrsum_index_neighborhood(index.get(), node.c_str(), collect, &found,
                                     hist.data()));
      report.add("node", node);
      report.add("degree", found.size());
      if (kind == "neighborhood") {
        std::vector<std::string> items;
        for (const auto& [v, r] : found) items.push_back(v + ":" + r);
        std::string joined;
        for (const auto& it : items) joined += (joined.empty() ? "" : ",") + it;
        report.add("neighbors", joined);
      }
      if (histogram) {
        for (std::size_t r = 0; r < q; ++r)
          report.add(std::string("relation.") + mrsum_summary_relation_label(s.get(), r),
                     hist[r]);
      }
      if (bench) {
        // Every node once through the index, then once by reconstructing and
        // scanning the edge list.
        const std::size_t n = mrsum_summary_node_count(s.get());
        std::uint64_t sink = 0;
        auto count = [](const char*, const char*, void* ctx) {
          ++*static_cast<std::uint64_t*>(ctx);
        };
        auto t0 = std::chrono::steady_clock::now();
        for (std::size_t u = 0; u < n; ++u)
          check(mrsum_index_neighborhood(index.get(), mrsum_summary_node_label(s.get(), u),
                                         count, &sink, nullptr));
        const double summary_ms = elapsed_ms(t0);
        t0 = std::chrono::steady_clock::now();
        mrsum_graph* rg = nullptr;
        check(mrsum_reconstruct(s.get(), &rg));
        GraphPtr g(rg);
        struct Scan {
          std::string target;
          std::uint64_t hits = 0;
        } scan;
        for (std::size_t u = 0; u < n; ++u) {
          scan.target = mrsum_summary_node_label(s.get(), u);
          check(mrsum_graph_for_each_edge(
              g.get(),
              [](const char* a, const char* b, const char*, void* ctx) {
                auto* sc = static_cast<Scan*>(ctx);
                if (sc->target == a || sc->target == b) ++sc->hits;
              },
              &scan));
        }
        const double scan_ms = elapsed_ms(t0);
        report.add("bench_queries", n);
        report.add("bench_summary_ms", summary_ms);
        report.add("bench_reconstruct_scan_ms", scan_ms);
        report.add("bench_speedup", summary_ms > 0 ? scan_ms / summary_ms : 0.0);
        report.add("bench_consistent", sink == scan.hits);
      }
    } else if (classify->parsed()) {
      auto g = load_graph(c.input, c.format);
      std::vector<SummaryPtr> owned;
      std::vector<const mrsum_summary*> list;
      for (const auto& path : candidates) {
        owned.push_back(load_summary(path));
        list.push_back(owned.back().get());
      }
      std::size_t winner = 0;
      std::vector<std::uint64_t> totals(list.size());
      check(mrsum_classify(g.get(), list.data(), list.size(), &winner, totals.data()));
      report.add("label", candidates[winner]);
      for (std::size_t i = 0; i < list.size(); ++i)
        report.add("total." + candidates[i], totals[i]);
    } else if (sweep->parsed()) {
      auto g = load_graph(c.input, c.format);
      if ((k_min == 0) != (k_max == 0)) {
        std::cerr << "error: give both --k-min and --k-max, or neither\n";
        return kUsage;
      }
      mrsum_sweep_point* points = nullptr;
      std::size_t count = 0;
      std::uint64_t selected = 0;
      check(mrsum_sweep_k(g.get(), k_min, k_max, step, seed, &points, &count, &selected));
      std::string csv = "k,relative_size\n";
      for (std::size_t i = 0; i < count; ++i) {
        char line[64];
        std::snprintf(line, sizeof line, "%llu,%.10g\n",
                      static_cast<unsigned long long>(points[i].k),
                      points[i].relative_size);
        csv += line;
      }
      mrsum_free(points);
      if (c.output.empty()) {
        std::cout << csv;
      } else {
        write_text(c.output, csv);
      }
      report.add("seed", seed);
      report.add("selected_k", selected);
    } else if (bundle->parsed()) {
      auto g = load_graph(c.input, c.format);
      mrsum_bundle* raw = nullptr;
      check(mrsum_bundle_all(g.get(), seed, &raw));
      BundlePtr b(raw);
      mrsum_cost cost;
      check(mrsum_bundle_cost(b.get(), &cost));
      std::uint64_t bytes = 0;
      std::uint64_t mapping = 0;
      check(mrsum_bundle_storage_bytes(b.get(), format_of(out_format), &bytes));
      check(mrsum_bundle_mapping_bytes(b.get(), &mapping));
      report.add("seed", seed);
      report.add_cost(cost);
      report.add("bundle_bytes", bytes);
      report.add("mapping_bytes", mapping);
      if (!c.output.empty()) {
        char* text = nullptr;
        check(mrsum_bundle_to_string(b.get(), format_of(out_format), &text));
        write_text(c.output, take(text));
        report.add("output", c.output);
      }
    } else if (oracle->parsed()) {
      auto g = load_graph(c.input, c.format);
      mrsum_summary* raw = nullptr;
      std::uint64_t examined = 0;
      check(mrsum_oracle(g.get(), k, objective == "corrections" ? 1 : 0, &raw, &examined));
      SummaryPtr s(raw);
      mrsum_cost cost;
      check(mrsum_summary_cost(s.get(), &cost));
      report.add("objective", objective);
      report.add("partitions_examined", examined);
      report.add_cost(cost);
      if (!c.output.empty()) {
        check(mrsum_summary_save_file(s.get(), c.output.c_str(), MRSUM_FORMAT_TRIPLES));
        report.add("output", c.output);
      }
    }
    report.print(c.json);
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
