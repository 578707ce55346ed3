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

#include <cstddef>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/eigensolve.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

/// Linear baseline embedding: channels are stacked as real vectors of
/// dimension 2M (interleaved re, im per complex entry, mirroring the
/// serialization layout), centered, and projected onto the top-D' principal
/// directions. The directions come from the same deterministic subspace
/// eigensolve used by MDS, applied to the covariance (1/N) Xc^T Xc without
/// forming it. Data whose covariance rank falls below D' is rejected.
inline Chart pca_baseline(const ChannelDataset& dataset, std::size_t target_dim,
                          unsigned threads = 1) {
  const std::size_t n = dataset.size();
  const std::size_t m2 = 2 * dataset.dimension();
  if (target_dim < 1) throw DomainError("PCA target dimension must be positive");
  if (n <= target_dim) throw DomainError("PCA needs N > D'");
  if (m2 < target_dim) throw DomainError("PCA target dimension exceeds the feature dimension");

  std::vector<double> data(n * m2);
  for (std::size_t i = 0; i < n; ++i) {
    auto entries = dataset.channel(i).entries();
    for (std::size_t k = 0; k < entries.size(); ++k) {
      data[i * m2 + 2 * k] = entries[k].real();
      data[i * m2 + 2 * k + 1] = entries[k].imag();
    }
  }
  std::vector<double> mean(m2, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m2; ++j) mean[j] += data[i * m2 + j];
  for (double& v : mean) v /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m2; ++j) data[i * m2 + j] -= mean[j];

  // v -> (1/N) Xc^T (Xc v), evaluated as two deterministic passes.
  std::vector<double> scratch(n, 0.0);
  auto covariance_matvec = [&](const double* x, double* y) {
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double* row = data.data() + i * m2;
        double acc = 0.0;
        for (std::size_t j = 0; j < m2; ++j) acc += row[j] * x[j];
        scratch[i] = acc;
      }
    });
    parallel_for(m2, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i * m2 + j] * scratch[i];
        y[j] = acc / static_cast<double>(n);
      }
    });
  };

  SubspaceOptions options;
  options.tolerance = 1e-10;
  options.max_iterations = 100000;
  options.shift = 0.0;  // covariance is PSD already
  options.scale_hint = 0.0;
  options.threads = threads;
  SubspaceResult eig = subspace_eigensolve(m2, target_dim, covariance_matvec, options);

  double leading = eig.eigenvalues.front();
  double trailing = eig.eigenvalues.back();
  if (!(leading > 0.0) || trailing <= 1e-12 * leading)
    throw DomainError("data rank is below the requested D' = " + std::to_string(target_dim) +
                      "; PCA baseline undefined");

  for (std::size_t c = 0; c < target_dim; ++c) fix_sign(eig.basis.data() + c * m2, m2);

  std::vector<double> coords(n * target_dim, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double* row = data.data() + i * m2;
      for (std::size_t c = 0; c < target_dim; ++c) {
        const double* direction = eig.basis.data() + c * m2;
        double acc = 0.0;
        for (std::size_t j = 0; j < m2; ++j) acc += row[j] * direction[j];
        coords[i * target_dim + c] = acc;
      }
    }
  });
  Chart chart(target_dim, std::move(coords));
  validate_chart(chart);
  return chart;
}

}  // namespace chanchart
