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
#include <random>

namespace chanchart {

// Reproducibility contract: every random draw in this library is derived from
// std::mt19937_64 (whose output sequence is pinned bit-exactly by the C++
// standard) through the explicit mappings below. The standard <random>
// distributions are deliberately avoided because their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1): top 53 bits of one engine draw, scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via the Box-Muller transform; one pair per two draws.
  /// The second value of each pair is cached, so draws come in a fixed order.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double radius = std::sqrt(-2.0 * std::log1p(-u1));  // log1p(-u1) = ln(1-u1), u1 < 1
    double angle = 2.0 * pi_ * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Circularly-symmetric complex normal with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance) {
    double scale = std::sqrt(variance / 2.0);
    double re = normal();
    double im = normal();
    return {scale * re, scale * im};
  }

  /// Bernoulli draw; consumes exactly one uniform.
  bool bernoulli(double probability) { return uniform01() < probability; }

  std::uint64_t raw() { return engine_(); }

 private:
  static constexpr double pi_ = 3.14159265358979323846;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// One step of the splitmix64 output function; used to derive substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed for an independent substream identified by (seed, tag, index).
/// Substreams let per-item draws run in parallel without changing results.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
  std::uint64_t state = seed;
  (void)splitmix64(state);
  state ^= tag;
  (void)splitmix64(state);
  state ^= index;
  return splitmix64(state);
}

}  // namespace chanchart
