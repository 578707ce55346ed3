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
#include <cstdint>
#include <string>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"

namespace chanchart {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    double n = norm();
    if (n == 0.0) throw DomainError("cannot normalize a zero vector");
    return {x / n, y / n, z / n};
  }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
};

enum class ArrayKind { ula, upa };

/// Base-station antenna array. A ULA lies along the in-plane axis orthogonal
/// to its broadside; a UPA spans that axis horizontally and the z axis
/// vertically, with element index a = a_h * A_v + a_v (horizontal-major).
struct ArrayGeometry {
  ArrayKind kind = ArrayKind::ula;
  std::uint32_t count_h = 1;          // ULA: total element count; UPA: horizontal count
  std::uint32_t count_v = 1;          // UPA only
  double element_spacing = 0.5;       // fraction of the evaluation wavelength
  Vec3 orientation{0.0, 1.0, 0.0};    // broadside unit vector

  std::uint32_t element_count() const {
    return kind == ArrayKind::ula ? count_h : count_h * count_v;
  }

  void validate() const {
    if (count_h == 0 || (kind == ArrayKind::upa && count_v == 0))
      throw DomainError("array element counts must be at least 1");
    if (!(element_spacing > 0.0)) throw DomainError("element spacing must be positive");
    if (orientation.norm() == 0.0) throw DomainError("array orientation must be nonzero");
  }

  /// Unit vector along the element line (in the horizontal plane).
  Vec3 horizontal_axis() const {
    Vec3 up{0.0, 0.0, 1.0};
    Vec3 axis = up.cross(orientation);
    if (axis.norm() == 0.0)
      throw DomainError("array broadside must not be vertical");
    return axis.normalized();
  }

  static ArrayGeometry ula(std::uint32_t antennas, double spacing = 0.5,
                           Vec3 broadside = {0.0, 1.0, 0.0}) {
    ArrayGeometry g{ArrayKind::ula, antennas, 1, spacing, broadside};
    g.validate();
    return g;
  }
  static ArrayGeometry upa(std::uint32_t horizontal, std::uint32_t vertical, double spacing = 0.5,
                           Vec3 broadside = {0.0, 1.0, 0.0}) {
    ArrayGeometry g{ArrayKind::upa, horizontal, vertical, spacing, broadside};
    g.validate();
    return g;
  }
};

namespace detail {

/// One-dimensional phase ramp: entry a = (1/sqrt(A)) exp(-j 2 pi a (D/lambda) u),
/// where D = spacing fraction * lambda, so D/lambda is the spacing fraction
/// and u the direction cosine along the element axis.
inline std::vector<cdouble> ula_factor(std::uint32_t count, double spacing_fraction,
                                       double direction_cosine) {
  std::vector<cdouble> e(count);
  double scale = 1.0 / std::sqrt(static_cast<double>(count));
  constexpr double two_pi = 6.28318530717958647692;
  for (std::uint32_t a = 0; a < count; ++a) {
    double phase = -two_pi * static_cast<double>(a) * spacing_fraction * direction_cosine;
    e[a] = {scale * std::cos(phase), scale * std::sin(phase)};
  }
  return e;
}

}  // namespace detail

/// Array steering vector e(v) for a plane wave from `direction`, evaluated at
/// `wavelength` (the array's physical spacing is element_spacing * wavelength).
/// Unit l2 norm; constant-modulus entries 1/sqrt(A).
inline std::vector<cdouble> steering_vector(const ArrayGeometry& geometry, const Vec3& direction,
                                            double wavelength) {
  geometry.validate();
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  if (direction.norm() == 0.0) throw DomainError("steering direction must be nonzero");
  Vec3 dir = direction.normalized();

  Vec3 axis_h = geometry.horizontal_axis();
  if (geometry.kind == ArrayKind::ula)
    return detail::ula_factor(geometry.count_h, geometry.element_spacing, dir.dot(axis_h));

  // UPA: Kronecker product of the horizontal and vertical ULA factors,
  // entry (a_h, a_v) at index a_h * A_v + a_v.
  Vec3 axis_v{0.0, 0.0, 1.0};
  std::vector<cdouble> horizontal =
      detail::ula_factor(geometry.count_h, geometry.element_spacing, dir.dot(axis_h));
  std::vector<cdouble> vertical =
      detail::ula_factor(geometry.count_v, geometry.element_spacing, dir.dot(axis_v));
  std::vector<cdouble> e(static_cast<std::size_t>(geometry.count_h) * geometry.count_v);
  for (std::uint32_t h = 0; h < geometry.count_h; ++h)
    for (std::uint32_t v = 0; v < geometry.count_v; ++v)
      e[static_cast<std::size_t>(h) * geometry.count_v + v] = horizontal[h] * vertical[v];
  return e;
}

/// Frequency-domain steering vector f(tau): the per-subcarrier phase ramp of a
/// propagation delay, entry s = (1/sqrt(S)) exp(-j 2 pi tau (f_s - f_c)).
/// Unit l2 norm; for S = 1 this is the scalar 1 (no delay information).
inline std::vector<cdouble> frequency_vector(double delay, const std::vector<double>& frequency_grid,
                                             double center_frequency) {
  if (frequency_grid.empty()) throw DomainError("frequency grid must hold at least one entry");
  std::size_t s_count = frequency_grid.size();
  std::vector<cdouble> f(s_count);
  double scale = 1.0 / std::sqrt(static_cast<double>(s_count));
  constexpr double two_pi = 6.28318530717958647692;
  for (std::size_t s = 0; s < s_count; ++s) {
    double phase = -two_pi * delay * (frequency_grid[s] - center_frequency);
    f[s] = {scale * std::cos(phase), scale * std::sin(phase)};
  }
  return f;
}

/// Kronecker product f (x) e mapped onto the channel layout m = s*A + a.
inline std::vector<cdouble> kron_frequency_steering(const std::vector<cdouble>& frequency,
                                                    const std::vector<cdouble>& steering) {
  std::vector<cdouble> h(frequency.size() * steering.size());
  for (std::size_t s = 0; s < frequency.size(); ++s)
    for (std::size_t a = 0; a < steering.size(); ++a)
      h[s * steering.size() + a] = frequency[s] * steering[a];
  return h;
}

}  // namespace chanchart
