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

#include <cmath>
#include <cstddef>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/eigensolve.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

/// Output of an embedding: the chart itself, the leading eigenvalues of the
/// centered Gram matrix (descending, negatives clipped to zero and flagged),
/// and a scalar stress diagnostic
///   geodesic_stress = sqrt( sum (D_in - D_chart)^2 / sum D_in^2 ).
struct EmbeddingResult {
  Chart chart;
  std::vector<double> eigenvalues;
  bool negative_eigenvalue_clipped = false;
  double geodesic_stress = 0.0;
};

namespace detail {

/// Double-centered Gram matrix B = -1/2 J (D o D) J, J = I - (1/N) 1 1^T,
/// computed entrywise as -1/2 (s_ij - mu_i - mu_j + mu) once per unordered
/// pair (exact symmetry).
inline std::vector<double> double_centered_gram(const DistanceMatrix& distances,
                                                unsigned threads = 1) {
  const std::size_t n = distances.size();
  std::vector<double> row_mean(n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto row = distances.row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * row[j];
      row_mean[i] = acc / static_cast<double>(n);
    }
  });
  double grand_mean = 0.0;
  for (double v : row_mean) grand_mean += v;
  grand_mean /= static_cast<double>(n);

  std::vector<double> gram(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto row = distances.row(i);
      for (std::size_t j = i; j < n; ++j) {
        double sq = row[j] * row[j];
        double b = -0.5 * (sq - row_mean[i] - row_mean[j] + grand_mean);
        gram[i * n + j] = b;
        gram[j * n + i] = b;
      }
    }
  });
  return gram;
}

inline double frobenius_norm(const std::vector<double>& values) {
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc);
}

}  // namespace detail

/// Classical (Torgerson) multidimensional scaling of a distance matrix.
///
/// The D' leading eigenpairs of the centered Gram matrix are extracted by
/// deterministic subspace iteration (fixed identity starting basis, relative
/// residual 1e-10, iteration cap 1e5); chart row i is
/// (sqrt(l_1) v_1[i], ..., sqrt(l_D') v_D'[i]) with each eigenvector's
/// largest-magnitude entry made positive. Negative leading eigenvalues are
/// clipped to zero and flagged (the input need not be Euclidean-realizable).
inline EmbeddingResult classical_mds(const DistanceMatrix& distances, std::size_t target_dim,
                                     unsigned threads = 1) {
  const std::size_t n = distances.size();
  if (target_dim < 1 || target_dim >= n)
    throw DomainError("MDS target dimension must satisfy 1 <= D' < N");

  std::vector<double> gram = detail::double_centered_gram(distances, threads);
  double scale = detail::frobenius_norm(gram);

  SubspaceOptions options;
  options.tolerance = 1e-10;
  options.max_iterations = 100000;
  options.shift = scale;  // Frobenius norm bounds the spectral radius, so
                          // B + shift*I is PSD and the algebraic order of B
                          // matches the magnitude order of the iterated matrix
  options.scale_hint = scale;
  options.threads = threads;
  SubspaceResult eig =
      subspace_eigensolve(n, target_dim, dense_symmetric_matvec(gram, n, threads), options);

  for (std::size_t c = 0; c < target_dim; ++c) fix_sign(eig.basis.data() + c * n, n);

  EmbeddingResult result;
  result.eigenvalues.resize(target_dim);
  for (std::size_t c = 0; c < target_dim; ++c) {
    if (eig.eigenvalues[c] < 0.0) {
      result.negative_eigenvalue_clipped = true;
      result.eigenvalues[c] = 0.0;
    } else {
      result.eigenvalues[c] = eig.eigenvalues[c];
    }
  }

  std::vector<double> coords(n * target_dim, 0.0);
  for (std::size_t c = 0; c < target_dim; ++c) {
    double root = std::sqrt(result.eigenvalues[c]);
    for (std::size_t i = 0; i < n; ++i) coords[i * target_dim + c] = root * eig.basis[c * n + i];
  }
  result.chart = Chart(target_dim, std::move(coords));
  validate_chart(result.chart);

  double misfit = 0.0, total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double g = distances.at(i, j);
      double acc = 0.0;
      for (std::size_t c = 0; c < target_dim; ++c) {
        double diff = result.chart.at(i, c) - result.chart.at(j, c);
        acc += diff * diff;
      }
      double chart_d = std::sqrt(acc);
      misfit += (g - chart_d) * (g - chart_d);
      total += g * g;
    }
  }
  result.geodesic_stress = total > 0.0 ? std::sqrt(misfit / total) : 0.0;
  return result;
}

}  // namespace chanchart
