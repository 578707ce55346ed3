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
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

using cdouble = std::complex<double>;

/// One user's uplink channel over `antenna_count` antennas and
/// `subcarrier_count` subcarriers. Entry layout is antenna-major within
/// subcarrier blocks, index m = s*A + a, so a Kronecker product
/// f(tau) (x) e(v) maps to a plain concatenation of scaled steering vectors.
class ChannelVector {
 public:
  ChannelVector(std::vector<cdouble> entries, std::uint32_t antennas, std::uint32_t subcarriers)
      : entries_(std::move(entries)), antennas_(antennas), subcarriers_(subcarriers) {
    if (antennas_ == 0 || subcarriers_ == 0)
      throw DomainError("channel vector needs at least one antenna and one subcarrier");
    std::size_t expected = static_cast<std::size_t>(antennas_) * subcarriers_;
    if (entries_.size() != expected)
      throw DomainError("channel vector has " + std::to_string(entries_.size()) +
                        " entries, expected A*S = " + std::to_string(expected));
  }

  std::uint32_t antenna_count() const { return antennas_; }
  std::uint32_t subcarrier_count() const { return subcarriers_; }
  std::size_t dimension() const { return entries_.size(); }
  std::span<const cdouble> entries() const { return entries_; }
  const cdouble& operator[](std::size_t m) const { return entries_[m]; }

  double squared_norm() const {
    double acc = 0.0;
    for (const cdouble& v : entries_) acc += v.real() * v.real() + v.imag() * v.imag();
    return acc;
  }
  double norm() const { return std::sqrt(squared_norm()); }

 private:
  std::vector<cdouble> entries_;
  std::uint32_t antennas_;
  std::uint32_t subcarriers_;
};

/// A flat row-major set of points, used for ground-truth positions and for
/// chart coordinates alike.
struct PointSet {
  std::size_t dimension = 0;
  std::vector<double> values;  // count() * dimension, row-major

  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> flat) : dimension(dim), values(std::move(flat)) {
    if (dimension == 0) throw DomainError("point set dimension must be positive");
    if (values.size() % dimension != 0)
      throw DomainError("point set storage is not a multiple of its dimension");
  }

  std::size_t count() const { return dimension == 0 ? 0 : values.size() / dimension; }
  double at(std::size_t i, std::size_t d) const { return values[i * dimension + d]; }
  double& at(std::size_t i, std::size_t d) { return values[i * dimension + d]; }
  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * dimension, dimension};
  }

  bool all_finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

/// Chart coordinates: one point of dimension D' per training channel.
/// Producers (MDS, PCA) emit centered columns; finiteness is checked here.
using Chart = PointSet;

inline void validate_chart(const Chart& chart) {
  if (!chart.all_finite()) throw DomainError("chart contains a non-finite coordinate");
}

/// N channels sharing (A, S), with optional ground-truth positions and the
/// subcarrier frequency grid. Immutable after construction; downstream
/// operations are pure functions of a dataset.
class ChannelDataset {
 public:
  ChannelDataset(std::vector<ChannelVector> channels, std::vector<double> frequency_grid,
                 std::optional<PointSet> positions = std::nullopt, std::string metadata = {})
      : channels_(std::move(channels)),
        frequency_grid_(std::move(frequency_grid)),
        positions_(std::move(positions)),
        metadata_(std::move(metadata)) {
    if (channels_.empty()) throw DomainError("dataset needs at least one channel");
    std::uint32_t a = channels_.front().antenna_count();
    std::uint32_t s = channels_.front().subcarrier_count();
    for (std::size_t i = 1; i < channels_.size(); ++i) {
      if (channels_[i].antenna_count() != a || channels_[i].subcarrier_count() != s)
        throw DomainError("channel " + std::to_string(i) + " does not share (A, S) with channel 0");
    }
    if (frequency_grid_.size() != s)
      throw DomainError("frequency grid has " + std::to_string(frequency_grid_.size()) +
                        " entries, expected S = " + std::to_string(s));
    for (std::size_t i = 1; i < frequency_grid_.size(); ++i) {
      if (!(frequency_grid_[i] > frequency_grid_[i - 1]))
        throw DomainError("frequency grid is not strictly increasing at index " + std::to_string(i));
    }
    if (positions_) {
      if (positions_->dimension != 2 && positions_->dimension != 3)
        throw DomainError("positions must have dimension 2 or 3");
      if (positions_->count() != channels_.size())
        throw DomainError("position count " + std::to_string(positions_->count()) +
                          " does not match channel count " + std::to_string(channels_.size()));
      if (!positions_->all_finite()) throw DomainError("positions contain a non-finite value");
    }
  }

  std::size_t size() const { return channels_.size(); }
  std::uint32_t antenna_count() const { return channels_.front().antenna_count(); }
  std::uint32_t subcarrier_count() const { return channels_.front().subcarrier_count(); }
  std::size_t dimension() const { return channels_.front().dimension(); }  // M = A*S
  const ChannelVector& channel(std::size_t i) const { return channels_[i]; }
  const std::vector<ChannelVector>& channels() const { return channels_; }
  const std::vector<double>& frequency_grid() const { return frequency_grid_; }
  bool has_positions() const { return positions_.has_value(); }
  const PointSet& positions() const {
    if (!positions_) throw DomainError("dataset carries no ground-truth positions");
    return *positions_;
  }
  const std::string& metadata() const { return metadata_; }

 private:
  std::vector<ChannelVector> channels_;
  std::vector<double> frequency_grid_;
  std::optional<PointSet> positions_;
  std::string metadata_;
};

/// Symmetric N x N nonnegative pairwise distances with a zero diagonal.
/// Symmetry is exact by construction: entries are computed once per
/// unordered pair and mirrored.
class DistanceMatrix {
 public:
  /// Evaluate `fn(i, j)` for every i < j (optionally in parallel) and mirror.
  static DistanceMatrix build(std::size_t n, const std::function<double(std::size_t, std::size_t)>& fn,
                              unsigned threads = 1) {
    DistanceMatrix m(n);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          double d = fn(i, j);
          if (!(d >= 0.0) || !std::isfinite(d))
            throw DomainError("distance (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is negative or non-finite");
          m.values_[i * n + j] = d;
          m.values_[j * n + i] = d;
        }
      }
    });
    return m;
  }

  /// Adopt a full row-major matrix, rejecting anything non-symmetric.
  static DistanceMatrix from_values(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) throw DomainError("distance matrix storage has wrong size");
    DistanceMatrix m(n);
    m.values_ = std::move(values);
    for (std::size_t i = 0; i < n; ++i) {
      if (m.values_[i * n + i] != 0.0)
        throw DomainError("distance matrix diagonal entry " + std::to_string(i) + " is nonzero");
      for (std::size_t j = i + 1; j < n; ++j) {
        double d = m.values_[i * n + j];
        if (!(d >= 0.0) || !std::isfinite(d))
          throw DomainError("distance matrix entry is negative or non-finite");
        if (d != m.values_[j * n + i])
          throw DomainError("distance matrix is not exactly symmetric at (" + std::to_string(i) +
                            ", " + std::to_string(j) + ")");
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }
  const std::vector<double>& values() const { return values_; }

 private:
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {
    if (n == 0) throw DomainError("distance matrix must have at least one row");
  }
  std::size_t n_;
  std::vector<double> values_;
};

}  // namespace chanchart
