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
#include <limits>
#include <string>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

enum class DistanceMeasure { euclidean, normalized, phase_insensitive };

inline const char* to_string(DistanceMeasure m) {
  switch (m) {
    case DistanceMeasure::euclidean: return "euclidean";
    case DistanceMeasure::normalized: return "normalized";
    case DistanceMeasure::phase_insensitive: return "phase-insensitive";
  }
  return "?";
}

inline DistanceMeasure parse_measure(const std::string& name) {
  if (name == "euclidean") return DistanceMeasure::euclidean;
  if (name == "normalized") return DistanceMeasure::normalized;
  if (name == "phase-insensitive" || name == "phase_insensitive")
    return DistanceMeasure::phase_insensitive;
  throw DomainError("unknown distance measure '" + name + "'");
}

namespace detail {

inline void check_same_dimension(const ChannelVector& h_k, const ChannelVector& h_l) {
  if (h_k.dimension() != h_l.dimension())
    throw DomainError("channel dimensions differ: " + std::to_string(h_k.dimension()) + " vs " +
                      std::to_string(h_l.dimension()));
}

inline double positive_norm(const ChannelVector& h, const char* who) {
  double n = h.norm();
  if (n == 0.0) throw DomainError(std::string(who) + ": zero-norm channel");
  return n;
}

/// Hermitian inner product h_k^H h_l = sum_m conj(h_k[m]) * h_l[m], accumulated
/// in index order (the fixed order keeps results identical across code paths).
inline cdouble hermitian_inner(std::span<const cdouble> k, std::span<const cdouble> l) {
  double acc_re = 0.0, acc_im = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    acc_re += k[m].real() * l[m].real() + k[m].imag() * l[m].imag();
    acc_im += k[m].real() * l[m].imag() - k[m].imag() * l[m].real();
  }
  return {acc_re, acc_im};
}

}  // namespace detail

/// Plain Euclidean distance ||h_k - h_l||_2 (unsquared).
inline double dist_euclidean(const ChannelVector& h_k, const ChannelVector& h_l) {
  detail::check_same_dimension(h_k, h_l);
  auto k = h_k.entries(), l = h_l.entries();
  double acc = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    double dr = k[m].real() - l[m].real();
    double di = k[m].imag() - l[m].imag();
    acc += dr * dr + di * di;
  }
  return std::sqrt(acc);
}

/// Euclidean distance between unit-normalized channels; range [0, 2].
inline double dist_normalized(const ChannelVector& h_k, const ChannelVector& h_l) {
  detail::check_same_dimension(h_k, h_l);
  double inv_k = 1.0 / detail::positive_norm(h_k, "dist_normalized");
  double inv_l = 1.0 / detail::positive_norm(h_l, "dist_normalized");
  auto k = h_k.entries(), l = h_l.entries();
  double acc = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    double dr = k[m].real() * inv_k - l[m].real() * inv_l;
    double di = k[m].imag() * inv_k - l[m].imag() * inv_l;
    acc += dr * dr + di * di;
  }
  return std::sqrt(acc);
}

namespace detail {

// Above this coherence the closed form 2 - 2c cancels catastrophically (the
// sqrt turns a 1-ulp error in c into ~1e-8), so the distance is re-evaluated
// as the norm of the phase-aligned difference, which is exact near zero.
inline constexpr double kAlignedPathCoherence = 0.99;

}  // namespace detail

/// Phase-insensitive distance, closed form:
///   d*^2 = 2 - 2 |h_k^H h_l| / (||h_k|| ||h_l||).
/// Equals the minimum over a global phase of the normalized Euclidean
/// distance. The radicand is clamped at zero, and nearly-aligned pairs
/// (coherence > 0.99) are re-evaluated through the optimal-phase residual
/// || h_k/||h_k|| - e^{j phi*} h_l/||h_l|| ||, the same quantity with full
/// precision near zero. Range [0, sqrt(2)], the maximum being attained by
/// orthogonal channels.
inline double dist_phase_insensitive(const ChannelVector& h_k, const ChannelVector& h_l) {
  detail::check_same_dimension(h_k, h_l);
  double inv_k = 1.0 / detail::positive_norm(h_k, "dist_phase_insensitive");
  double inv_l = 1.0 / detail::positive_norm(h_l, "dist_phase_insensitive");
  cdouble inner = detail::hermitian_inner(h_k.entries(), h_l.entries());
  double coherence = std::hypot(inner.real(), inner.imag()) * inv_k * inv_l;
  if (coherence <= detail::kAlignedPathCoherence)
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * coherence));

  double phi = -std::atan2(inner.imag(), inner.real());
  double rot_re = std::cos(phi), rot_im = std::sin(phi);
  auto k = h_k.entries(), l = h_l.entries();
  double acc = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    double lr = l[m].real() * inv_l, li = l[m].imag() * inv_l;
    double dr = k[m].real() * inv_k - (rot_re * lr - rot_im * li);
    double di = k[m].imag() * inv_k - (rot_re * li + rot_im * lr);
    acc += dr * dr + di * di;
  }
  return std::sqrt(acc);
}

/// Brute-force evaluation of the defining minimization,
///   min over phi in {2 pi t / grid_size} of || h_k/||h_k|| - e^{j phi} h_l/||h_l|| ||_2,
/// evaluated entry by entry with no inner-product shortcut. Slow on purpose:
/// this is the independent oracle the closed form is checked against. The
/// grid gap adds at most 2 (pi/grid_size)^2 to the squared distance.
inline double dist_phase_insensitive_variational(const ChannelVector& h_k, const ChannelVector& h_l,
                                                 std::size_t grid_size) {
  detail::check_same_dimension(h_k, h_l);
  if (grid_size < 4) throw DomainError("variational grid needs at least 4 points");
  double inv_k = 1.0 / detail::positive_norm(h_k, "dist_phase_insensitive_variational");
  double inv_l = 1.0 / detail::positive_norm(h_l, "dist_phase_insensitive_variational");
  auto k = h_k.entries(), l = h_l.entries();

  constexpr double two_pi = 6.28318530717958647692;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < grid_size; ++t) {
    double phi = two_pi * static_cast<double>(t) / static_cast<double>(grid_size);
    double rot_re = std::cos(phi), rot_im = std::sin(phi);
    double acc = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
      double lr = l[m].real() * inv_l, li = l[m].imag() * inv_l;
      double dr = k[m].real() * inv_k - (rot_re * lr - rot_im * li);
      double di = k[m].imag() * inv_k - (rot_re * li + rot_im * lr);
      acc += dr * dr + di * di;
    }
    best = std::min(best, acc);
  }
  return std::sqrt(best);
}

/// The phase aligning h_l onto h_k: phi* = -arg(h_k^H h_l), in (-pi, pi].
/// At phi* the normalized distance attains d*, and
/// Re{h_k^H e^{j phi*} h_l} = |h_k^H h_l|.
inline double optimal_phase(const ChannelVector& h_k, const ChannelVector& h_l) {
  detail::check_same_dimension(h_k, h_l);
  cdouble inner = detail::hermitian_inner(h_k.entries(), h_l.entries());
  if (std::abs(inner) == 0.0)
    throw DomainError("optimal_phase undefined: channels are orthogonal, every phase is optimal");
  constexpr double pi = 3.14159265358979323846;
  double phi = -std::arg(inner);
  if (phi <= -pi) phi += 2.0 * pi;
  return phi;
}

/// Build the full N x N matrix of pairwise distances under `measure`.
/// Each unordered pair is computed exactly once and mirrored, so the result
/// is exactly symmetric and identical for any thread count. Complexity
/// O(M N^2).
inline DistanceMatrix build_distance_matrix(const ChannelDataset& dataset, DistanceMeasure measure,
                                            unsigned threads = 1) {
  const std::size_t n = dataset.size();
  const std::size_t m = dataset.dimension();

  // Pack per-channel real/imag planes contiguously; keeps the pair kernel on
  // plain double arrays while preserving the same accumulation order as the
  // pairwise operations above.
  std::vector<double> re(n * m), im(n * m), norm(n, 0.0), inv_norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto entries = dataset.channel(i).entries();
    for (std::size_t k = 0; k < m; ++k) {
      re[i * m + k] = entries[k].real();
      im[i * m + k] = entries[k].imag();
    }
  }
  if (measure != DistanceMeasure::euclidean) {
    for (std::size_t i = 0; i < n; ++i) {
      norm[i] = dataset.channel(i).norm();
      if (norm[i] == 0.0)
        throw DomainError("channel " + std::to_string(i) + " has zero norm; " +
                          to_string(measure) + " distance undefined");
      inv_norm[i] = 1.0 / norm[i];
    }
  }

  std::vector<double> values(n * n, 0.0);
  auto pair_distance = [&](std::size_t i, std::size_t j) -> double {
    const double* kr = re.data() + i * m;
    const double* ki = im.data() + i * m;
    const double* lr = re.data() + j * m;
    const double* li = im.data() + j * m;
    switch (measure) {
      case DistanceMeasure::euclidean: {
        double acc = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
          double dr = kr[t] - lr[t];
          double di = ki[t] - li[t];
          acc += dr * dr + di * di;
        }
        return std::sqrt(acc);
      }
      case DistanceMeasure::normalized: {
        double ik = inv_norm[i], il = inv_norm[j];
        double acc = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
          double dr = kr[t] * ik - lr[t] * il;
          double di = ki[t] * ik - li[t] * il;
          acc += dr * dr + di * di;
        }
        return std::sqrt(acc);
      }
      case DistanceMeasure::phase_insensitive: {
        double acc_re = 0.0, acc_im = 0.0;
        for (std::size_t t = 0; t < m; ++t) {
          acc_re += kr[t] * lr[t] + ki[t] * li[t];
          acc_im += kr[t] * li[t] - ki[t] * lr[t];
        }
        double coherence = std::hypot(acc_re, acc_im) / (norm[i] * norm[j]);
        return std::sqrt(std::max(0.0, 2.0 - 2.0 * coherence));
      }
    }
    return 0.0;
  };

  // Row i carries n-i-1 pairs; pairing row u with row n-1-u balances the
  // chunks handed to parallel_for.
  std::size_t units = (n + 1) / 2;
  parallel_for(units, threads, [&](std::size_t begin, std::size_t end) {
    auto fill_row = [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = pair_distance(i, j);
        values[i * n + j] = d;
        values[j * n + i] = d;
      }
    };
    for (std::size_t u = begin; u < end; ++u) {
      fill_row(u);
      std::size_t mirror = n - 1 - u;
      if (mirror != u) fill_row(mirror);
    }
  });
  return DistanceMatrix::from_values(n, std::move(values));
}

}  // namespace chanchart
