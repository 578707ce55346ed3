// SPDX-License-Identifier: Apache-2.0
//
// chanchart - channel charting toolkit for massive MIMO channels
// Copyright (C) 2026 the chanchart authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

/// Proximity ranks of a point set: entry (i, j) is the rank of point j among
/// all points ordered by Euclidean distance to point i (rank 1 = nearest,
/// self excluded, ties broken by ascending index). Each row is a permutation
/// of 1..N-1 over j != i.
class RankTable {
 public:
  static RankTable compute(const PointSet& points, unsigned threads = 1) {
    const std::size_t n = points.count();
    if (n < 2) throw DomainError("rank table needs at least two points");
    if (!points.all_finite()) throw DomainError("rank table input has a non-finite coordinate");
    RankTable table(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      std::vector<std::pair<double, std::uint32_t>> order;
      for (std::size_t i = begin; i < end; ++i) {
        order.clear();
        order.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          double acc = 0.0;
          for (std::size_t d = 0; d < points.dimension; ++d) {
            double diff = points.at(i, d) - points.at(j, d);
            acc += diff * diff;
          }
          order.emplace_back(acc, static_cast<std::uint32_t>(j));
        }
        std::sort(order.begin(), order.end());
        for (std::size_t r = 0; r < order.size(); ++r)
          table.ranks_[i * n + order[r].second] = static_cast<std::uint32_t>(r + 1);
      }
    });
    return table;
  }

  std::size_t size() const { return n_; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return ranks_[i * n_ + j]; }

 private:
  explicit RankTable(std::size_t n) : n_(n), ranks_(n * n, 0) {}
  std::size_t n_;
  std::vector<std::uint32_t> ranks_;
};

namespace detail {

inline void check_neighborhood_size(std::size_t k, std::size_t n) {
  // K < (2N-1)/3 keeps the normalizer 2 / (N K (2N - 3K - 1)) positive.
  if (k < 1 || 3 * k >= 2 * n - 1)
    throw DomainError("neighborhood size K = " + std::to_string(k) +
                      " outside [1, (2N-1)/3) for N = " + std::to_string(n));
}

/// Shared kernel of continuity and trustworthiness:
///   1 - 2/(N K (2N-3K-1)) * sum_i sum_{j in V_i} (penalty_rank(i,j) - K),
/// where V_i holds the points among the K nearest of i under `select` ranks
/// but not among the K nearest under `penalty` ranks.
inline double neighborhood_score(const RankTable& select, const RankTable& penalty, std::size_t k) {
  const std::size_t n = select.size();
  check_neighborhood_size(k, n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::uint32_t penalty_rank = penalty.at(i, j);
      if (select.at(i, j) <= k && penalty_rank > k)
        total += static_cast<double>(penalty_rank) - static_cast<double>(k);
    }
  }
  double normalizer =
      2.0 / (static_cast<double>(n) * static_cast<double>(k) *
             (2.0 * static_cast<double>(n) - 3.0 * static_cast<double>(k) - 1.0));
  return 1.0 - normalizer * total;
}

}  // namespace detail

/// Continuity CT(K): penalizes spatial K-neighborhoods that are torn apart on
/// the chart. 1 is perfect; both bounds of [0, 1] are attainable.
inline double continuity(const PointSet& positions, const Chart& chart, std::size_t k,
                         unsigned threads = 1) {
  if (positions.count() != chart.count())
    throw DomainError("positions and chart disagree on the number of points");
  RankTable space = RankTable::compute(positions, threads);
  RankTable charted = RankTable::compute(chart, threads);
  return detail::neighborhood_score(space, charted, k);
}

/// Trustworthiness TW(K): the mirror image of continuity with the roles of
/// space and chart switched, so TW(P, Z, K) = CT(Z, P, K) identically.
inline double trustworthiness(const PointSet& positions, const Chart& chart, std::size_t k,
                              unsigned threads = 1) {
  return continuity(chart, positions, k, threads);
}

struct QualityCurve {
  std::vector<std::size_t> neighborhood_sizes;
  std::vector<double> scores;
};

/// Evaluate CT and TW over a list of neighborhood sizes (rank tables are
/// computed once). Invalid K values are rejected up front, naming the value.
inline std::pair<QualityCurve, QualityCurve> quality_curves(const PointSet& positions,
                                                            const Chart& chart,
                                                            const std::vector<std::size_t>& k_list,
                                                            unsigned threads = 1) {
  if (positions.count() != chart.count())
    throw DomainError("positions and chart disagree on the number of points");
  for (std::size_t k : k_list) detail::check_neighborhood_size(k, positions.count());
  RankTable space = RankTable::compute(positions, threads);
  RankTable charted = RankTable::compute(chart, threads);
  QualityCurve ct, tw;
  ct.neighborhood_sizes = k_list;
  tw.neighborhood_sizes = k_list;
  for (std::size_t k : k_list) {
    ct.scores.push_back(detail::neighborhood_score(space, charted, k));
    tw.scores.push_back(detail::neighborhood_score(charted, space, k));
  }
  return {std::move(ct), std::move(tw)};
}

}  // namespace chanchart
