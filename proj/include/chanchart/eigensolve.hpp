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
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

/// Eigendecomposition of a small dense symmetric matrix by cyclic Jacobi
/// rotations. Eigenvalues are returned in descending order with the matching
/// eigenvectors as columns (column-major, r x r). Fully deterministic.
struct SmallEigResult {
  std::vector<double> values;
  std::vector<double> vectors;  // column-major, vectors[c * r + i]
};

inline SmallEigResult jacobi_eigensymm(std::vector<double> a, std::size_t r) {
  if (a.size() != r * r) throw DomainError("jacobi_eigensymm: bad matrix size");
  std::vector<double> v(r * r, 0.0);
  for (std::size_t i = 0; i < r; ++i) v[i * r + i] = 1.0;

  auto off_norm = [&]() {
    double acc = 0.0;
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = p + 1; q < r; ++q) acc += a[p * r + q] * a[p * r + q];
    return std::sqrt(acc);
  };
  double fro = 0.0;
  for (double x : a) fro += x * x;
  fro = std::sqrt(fro);

  for (int sweep = 0; sweep < 128 && off_norm() > 1e-15 * std::max(fro, 1e-300); ++sweep) {
    for (std::size_t p = 0; p < r; ++p) {
      for (std::size_t q = p + 1; q < r; ++q) {
        double apq = a[p * r + q];
        if (apq == 0.0) continue;
        double theta = (a[q * r + q] - a[p * r + p]) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (std::size_t i = 0; i < r; ++i) {
          double aip = a[i * r + p], aiq = a[i * r + q];
          a[i * r + p] = c * aip - s * aiq;
          a[i * r + q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < r; ++i) {
          double api = a[p * r + i], aqi = a[q * r + i];
          a[p * r + i] = c * api - s * aqi;
          a[q * r + i] = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < r; ++i) {
          double vip = v[p * r + i], viq = v[q * r + i];
          // v rows here index the eigenvector slot; stored transposed below
          v[p * r + i] = c * vip - s * viq;
          v[q * r + i] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x * r + x] > a[y * r + y]; });
  SmallEigResult result;
  result.values.resize(r);
  result.vectors.assign(r * r, 0.0);
  for (std::size_t c = 0; c < r; ++c) {
    result.values[c] = a[order[c] * r + order[c]];
    for (std::size_t i = 0; i < r; ++i) result.vectors[c * r + i] = v[order[c] * r + i];
  }
  return result;
}

/// Make the entry of largest magnitude in [begin, begin+n) positive; ties go
/// to the lowest index. Charts are defined up to isometry, this pins a
/// byte-stable representative.
inline void fix_sign(double* begin, std::size_t n) {
  std::size_t arg = 0;
  double best = std::abs(begin[0]);
  for (std::size_t i = 1; i < n; ++i) {
    double mag = std::abs(begin[i]);
    if (mag > best) {
      best = mag;
      arg = i;
    }
  }
  if (begin[arg] < 0.0)
    for (std::size_t i = 0; i < n; ++i) begin[i] = -begin[i];
}

struct SubspaceOptions {
  double tolerance = 1e-10;          // relative residual target
  std::size_t max_iterations = 100000;
  double shift = 0.0;                // sigma with A + sigma*I positive semidefinite
  double scale_hint = 0.0;           // residual scale; 0 = largest Ritz magnitude
  unsigned threads = 1;
};

struct SubspaceResult {
  std::vector<double> eigenvalues;   // descending, r entries
  std::vector<double> basis;         // column-major n x r eigenvector estimates
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// Simultaneous (block power) iteration with per-sweep Rayleigh-Ritz
/// extraction for the r algebraically largest eigenpairs of a symmetric
/// operator. The starting basis is fixed: identity columns 0..r-1, so the
/// whole computation is reproducible bit for bit at any thread count.
///
/// `matvec(x, y)` must write y = A x for a single column.
inline SubspaceResult subspace_eigensolve(
    std::size_t n, std::size_t r,
    const std::function<void(const double*, double*)>& matvec, const SubspaceOptions& options) {
  if (r < 1 || r > n) throw DomainError("subspace_eigensolve: need 1 <= r <= n");

  std::vector<double> basis(n * r, 0.0);
  for (std::size_t c = 0; c < r; ++c) basis[c * n + c] = 1.0;
  std::vector<double> image(n * r, 0.0);      // A * basis
  std::vector<double> rotated(n * r, 0.0);
  std::vector<double> small(r * r, 0.0);

  auto column = [&](std::vector<double>& m, std::size_t c) { return m.data() + c * n; };
  auto dot = [&](const double* x, const double* y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
  };

  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iteration = 0; iteration <= options.max_iterations; ++iteration) {
    for (std::size_t c = 0; c < r; ++c) matvec(column(basis, c), column(image, c));

    // Rayleigh-Ritz on the current basis.
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q)
        small[p * r + q] = dot(column(basis, p), column(image, q));
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = p + 1; q < r; ++q) {
        double sym = 0.5 * (small[p * r + q] + small[q * r + p]);
        small[p * r + q] = sym;
        small[q * r + p] = sym;
      }
    SmallEigResult ritz = jacobi_eigensymm(small, r);

    // Rotate basis and image onto the Ritz vectors.
    auto rotate = [&](std::vector<double>& m) {
      std::fill(rotated.begin(), rotated.end(), 0.0);
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t p = 0; p < r; ++p) {
          double w = ritz.vectors[c * r + p];
          if (w == 0.0) continue;
          const double* src = m.data() + p * n;
          double* dst = rotated.data() + c * n;
          for (std::size_t i = 0; i < n; ++i) dst[i] += w * src[i];
        }
      m.swap(rotated);
    };
    rotate(basis);
    rotate(image);

    residual = 0.0;
    for (std::size_t c = 0; c < r; ++c) {
      double acc = 0.0;
      const double* x = column(basis, c);
      const double* ax = column(image, c);
      for (std::size_t i = 0; i < n; ++i) {
        double diff = ax[i] - ritz.values[c] * x[i];
        acc += diff * diff;
      }
      residual = std::max(residual, std::sqrt(acc));
    }
    double scale = options.scale_hint > 0.0
                       ? options.scale_hint
                       : std::max(std::abs(ritz.values.front()), std::abs(ritz.values.back()));
    if (residual <= options.tolerance * scale + 1e-300) {
      SubspaceResult result;
      result.eigenvalues = ritz.values;
      result.basis = std::move(basis);
      result.iterations = iteration;
      result.residual = residual;
      return result;
    }
    if (iteration == options.max_iterations) break;

    // Next subspace: (A + sigma I) X, re-orthonormalized (modified
    // Gram-Schmidt; a collapsed column is replaced by an identity column).
    for (std::size_t c = 0; c < r; ++c) {
      double* y = column(image, c);
      const double* x = column(basis, c);
      if (options.shift != 0.0)
        for (std::size_t i = 0; i < n; ++i) y[i] += options.shift * x[i];
    }
    for (std::size_t c = 0; c < r; ++c) {
      double* y = column(image, c);
      for (std::size_t p = 0; p < c; ++p) {
        const double* q = column(image, p);
        double coeff = dot(q, y);
        for (std::size_t i = 0; i < n; ++i) y[i] -= coeff * q[i];
      }
      double nrm = std::sqrt(dot(y, y));
      if (nrm < 1e-154) {
        std::fill(y, y + n, 0.0);
        y[(c + iteration) % n] = 1.0;
        for (std::size_t p = 0; p < c; ++p) {
          const double* q = column(image, p);
          double coeff = dot(q, y);
          for (std::size_t i = 0; i < n; ++i) y[i] -= coeff * q[i];
        }
        nrm = std::sqrt(dot(y, y));
        if (nrm < 1e-154) throw ConvergenceError("subspace basis collapsed", residual);
      }
      double inv = 1.0 / nrm;
      for (std::size_t i = 0; i < n; ++i) y[i] *= inv;
    }
    basis.swap(image);
  }
  throw ConvergenceError("subspace iteration did not converge within " +
                             std::to_string(options.max_iterations) +
                             " iterations (residual " + std::to_string(residual) + ")",
                         residual);
}

/// matvec closure over a dense symmetric row-major matrix, optionally
/// threaded by output rows (each row is one sequential dot product, so the
/// result does not depend on the thread count).
inline std::function<void(const double*, double*)> dense_symmetric_matvec(
    const std::vector<double>& values, std::size_t n, unsigned threads = 1) {
  return [&values, n, threads](const double* x, double* y) {
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const double* row = values.data() + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        y[i] = acc;
      }
    });
  };
}

}  // namespace chanchart
