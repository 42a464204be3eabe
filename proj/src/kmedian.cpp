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

#include <algorithm>
#include <limits>

#include "mrsum/error.hpp"
#include "mrsum/parallel.hpp"
#include "mrsum/random.hpp"
#include "mrsum/summarizers.hpp"

namespace mrsum {
namespace {

using Columns = std::vector<std::uint32_t>;

std::uint64_t l1(const Columns& a, const Columns& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

// Coordinate-wise median of binary rows: a column is set when more than half
// of the members have it.
std::vector<Columns> medians(std::span<const AdjacencyRow> rows,
                             const std::vector<std::uint32_t>& assign,
                             std::size_t k) {
  std::vector<std::vector<std::uint32_t>> pooled(k);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ++sizes[assign[i]];
    auto& p = pooled[assign[i]];
    p.insert(p.end(), rows[i].columns.begin(), rows[i].columns.end());
  }
  std::vector<Columns> centers(k);
  parallel_for(k, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      auto& p = pooled[c];
      std::sort(p.begin(), p.end());
      for (std::size_t i = 0; i < p.size();) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if (2 * (j - i) > sizes[c]) centers[c].push_back(p[i]);
        i = j;
      }
    }
  });
  return centers;
}

// Column -> ids of the rows containing it, in row order.
class ColumnIndex {
 public:
  template <typename RowList, typename Get>
  ColumnIndex(const RowList& rows, std::size_t columns, Get get) : start_(columns + 1, 0) {
    for (const auto& r : rows)
      for (auto col : get(r)) ++start_[col + 1];
    for (std::size_t c = 0; c < columns; ++c) start_[c + 1] += start_[c];
    ids_.resize(start_[columns]);
    std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
    std::uint32_t id = 0;
    for (const auto& r : rows) {
      for (auto col : get(r)) ids_[fill[col]++] = id;
      ++id;
    }
  }
  ColumnIndex(std::span<const AdjacencyRow> rows, std::size_t columns)
      : ColumnIndex(rows, columns, [](const AdjacencyRow& r) -> const Columns& {
          return r.columns;
        }) {}
  ColumnIndex(const std::vector<Columns>& rows, std::size_t columns)
      : ColumnIndex(rows, columns, [](const Columns& r) -> const Columns& { return r; }) {}

  std::span<const std::uint32_t> rows_with(std::uint32_t col) const {
    return {ids_.data() + start_[col], start_[col + 1] - start_[col]};
  }
  std::size_t column_count() const { return start_.size() - 1; }

 private:
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> ids_;
};

std::size_t column_bound(std::span<const AdjacencyRow> rows) {
  std::size_t bound = 0;
  for (const auto& r : rows)
    for (auto col : r.columns) bound = std::max<std::size_t>(bound, col + 1);
  return bound;
}

class KMedian {
 public:
  KMedian(std::span<const AdjacencyRow> rows, const ColumnIndex& index, std::size_t k)
      : rows_(rows), index_(index), k_(k) {}

  void seed(Rng& rng) {
    const std::size_t n = rows_.size();
    std::vector<char> chosen(n, 0);
    std::vector<std::uint64_t> nearest(n, std::numeric_limits<std::uint64_t>::max());
    std::vector<std::uint32_t> common(n);
    std::size_t pick = rng.below(n);
    centers_.clear();
    for (std::size_t c = 0; c < k_; ++c) {
      if (c > 0) {
        std::uint64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) total += nearest[i];
        if (total == 0) {
          // Every row coincides with a center; take a fresh row uniformly.
          std::vector<std::size_t> rest;
          for (std::size_t i = 0; i < n; ++i)
            if (!chosen[i]) rest.push_back(i);
          pick = rest[rng.below(rest.size())];
        } else {
          std::uint64_t target = rng.below(total);
          pick = 0;
          while (target >= nearest[pick]) target -= nearest[pick++];
        }
      }
      chosen[pick] = 1;
      const Columns& center = rows_[pick].columns;
      centers_.push_back(center);
      std::fill(common.begin(), common.end(), 0);
      for (auto col : center)
        for (auto i : index_.rows_with(col)) ++common[i];
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t d = rows_[i].columns.size() + center.size() - 2 * common[i];
        nearest[i] = std::min(nearest[i], d);
      }
    }
  }

  std::vector<std::uint32_t> run(int max_rounds) {
    std::vector<std::uint32_t> assign;
    for (int round = 0; round < max_rounds; ++round) {
      auto next = nearest_centers();
      reseed_empty(next);
      if (next == assign) break;
      assign = std::move(next);
      centers_ = medians(rows_, assign, k_);
    }
    if (assign.empty()) {
      assign = nearest_centers();
      reseed_empty(assign);
    }
    return assign;
  }

 private:
  // Nearest center per row (ties to the lowest center index), distances
  // recorded in distance_.
  std::vector<std::uint32_t> nearest_centers() {
    const std::size_t n = rows_.size();
    const ColumnIndex by_column(centers_, index_.column_count());
    std::vector<std::uint32_t> assign(n);
    distance_.assign(n, 0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
      std::vector<std::uint32_t> common(k_, 0);
      for (std::size_t i = begin; i < end; ++i) {
        std::fill(common.begin(), common.end(), 0);
        for (auto col : rows_[i].columns)
          for (auto c : by_column.rows_with(col)) ++common[c];
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        std::uint32_t arg = 0;
        for (std::uint32_t c = 0; c < k_; ++c) {
          const std::uint64_t d =
              rows_[i].columns.size() + centers_[c].size() - 2 * common[c];
          if (d < best) {
            best = d;
            arg = c;
          }
        }
        assign[i] = arg;
        distance_[i] = best;
      }
    });
    return assign;
  }

  // An empty cluster takes the row farthest from its center among clusters
  // that can spare one; ties to the lowest row index.
  void reseed_empty(std::vector<std::uint32_t>& assign) {
    std::vector<std::size_t> sizes(k_, 0);
    for (auto c : assign) ++sizes[c];
    for (std::uint32_t c = 0; c < k_; ++c) {
      if (sizes[c] > 0) continue;
      std::size_t far = rows_.size();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (sizes[assign[i]] < 2) continue;
        if (far == rows_.size() || distance_[i] > distance_[far]) far = i;
      }
      --sizes[assign[far]];
      assign[far] = c;
      sizes[c] = 1;
      distance_[far] = 0;
      centers_[c] = rows_[far].columns;
    }
  }

  std::span<const AdjacencyRow> rows_;
  const ColumnIndex& index_;
  std::size_t k_;
  std::vector<Columns> centers_;
  std::vector<std::uint64_t> distance_;
};

void check_k(std::size_t k, std::size_t n) {
  if (k < 1 || k > n)
    throw Error(ErrorCode::kOutOfRange, "k = " + std::to_string(k) +
                                            " outside [1, " + std::to_string(n) +
                                            "]");
}

}  // namespace

Partition kmedian_cluster(std::span<const AdjacencyRow> rows, std::size_t k,
                          std::uint64_t seed, const KMedianOptions& options) {
  check_k(k, rows.size());
  Rng rng(seed);
  const ColumnIndex index(rows, column_bound(rows));
  Partition best;
  std::uint64_t best_cost = 0;
  for (int t = 0; t < std::max(1, options.restarts); ++t) {
    KMedian km(rows, index, k);
    km.seed(rng);
    auto p = Partition::from_labels(km.run(std::max(1, options.max_rounds)));
    const std::uint64_t c = kmedian_cost(rows, p);
    if (t == 0 || c < best_cost) {
      best = std::move(p);
      best_cost = c;
    }
  }
  return best;
}

std::uint64_t kmedian_cost(std::span<const AdjacencyRow> rows,
                           const Partition& p) {
  if (p.node_count() != rows.size())
    throw Error(ErrorCode::kInvalidArgument, "partition does not match rows");
  const auto centers = medians(rows, p.assignment(), p.block_count());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    total += l1(rows[i].columns, centers[p.block_of(static_cast<NodeId>(i))]);
  return total;
}

Summary kmedian_plus(const MultiRelationGraph& g, std::size_t k,
                     std::uint64_t seed) {
  check_k(k, g.node_count());
  std::vector<AdjacencyRow> rows;
  rows.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) rows.push_back(concatenated_row(g, u));
  return build_summary(g, kmedian_cluster(rows, k, seed));
}

Summary kmedian_summarize(const MultiRelationGraph& view, std::size_t k,
                          std::uint64_t seed) {
  if (view.relation_count() > 1)
    throw Error(ErrorCode::kInvalidArgument,
                "kmedian needs a single-relation graph, got " +
                    std::to_string(view.relation_count()) + " relations");
  return kmedian_plus(view, k, seed);
}

}  // namespace mrsum
