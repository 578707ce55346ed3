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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "chanchart/distances.hpp"
#include "chanchart/generator.hpp"
#include "chanchart/scenario.hpp"
#include "support/oracles.hpp"

using namespace chanchart;

namespace {

constexpr double kPi = 3.14159265358979323846;

ChannelVector scale(const ChannelVector& h, cdouble factor) {
  std::vector<cdouble> entries(h.entries().begin(), h.entries().end());
  for (auto& v : entries) v *= factor;
  return ChannelVector(std::move(entries), h.antenna_count(), h.subcarrier_count());
}

ChannelVector rotate(const ChannelVector& h, double phi) {
  return scale(h, {std::cos(phi), std::sin(phi)});
}

/// Two users on the same ray from the array, single LoS path each.
std::pair<ChannelVector, ChannelVector> single_path_pair(double d1, double d2,
                                                         const std::vector<double>& grid,
                                                         double center_frequency) {
  ArrayGeometry geometry = ArrayGeometry::ula(8);
  Vec3 direction{0.6, 0.8, 0.0};
  ChannelVector h1 = make_single_path_channel(geometry, grid, center_frequency,
                                              {direction.x * d1, direction.y * d1, 0.0});
  ChannelVector h2 = make_single_path_channel(geometry, grid, center_frequency,
                                              {direction.x * d2, direction.y * d2, 0.0});
  return {std::move(h1), std::move(h2)};
}

}  // namespace

TEST_CASE("euclidean distance basics") {
  ChannelVector a({{1.0, 0.0}, {0.0, 0.0}}, 2, 1);
  ChannelVector b({{0.0, 0.0}, {1.0, 0.0}}, 2, 1);
  CHECK(dist_euclidean(a, a) == 0.0);
  CHECK_THAT(dist_euclidean(a, b), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_THROWS_AS(dist_euclidean(a, ChannelVector({{1.0, 0.0}}, 1, 1)), DomainError);
}

TEST_CASE("euclidean distance matches the naive summation oracle") {
  Rng rng(100);
  for (int trial = 0; trial < 50; ++trial) {
    ChannelVector a = oracles::random_channel(rng, 4, 3);
    ChannelVector b = oracles::random_channel(rng, 4, 3);
    CHECK_THAT(dist_euclidean(a, b), Catch::Matchers::WithinAbs(oracles::naive_euclidean(a, b), 1e-12));
  }
}

TEST_CASE("normalized distance: scale invariance and antipodal pairs") {
  Rng rng(101);
  ChannelVector h = oracles::random_channel(rng, 4, 2);
  CHECK_THAT(dist_normalized(h, scale(h, {5.0, 0.0})), Catch::Matchers::WithinAbs(0.0, 1e-7));
  CHECK_THAT(dist_normalized(h, scale(h, {-1.0, 0.0})), Catch::Matchers::WithinAbs(2.0, 1e-12));
  ChannelVector zero({{0.0, 0.0}}, 1, 1);
  CHECK_THROWS_AS(dist_normalized(zero, ChannelVector({{1.0, 0.0}}, 1, 1)), DomainError);
}

TEST_CASE("half-wavelength pathological pair: normalized explodes, d* stays put") {
  double f_c = 2.0e9;
  double lambda = kSpeedOfLight / f_c;

  SECTION("single subcarrier: exact opposition") {
    auto [h1, h2] = single_path_pair(100.0, 100.0 + lambda / 2.0, {f_c}, f_c);
    CHECK_THAT(dist_normalized(h1, h2), Catch::Matchers::WithinAbs(2.0, 1e-9));
    CHECK_THAT(dist_phase_insensitive(h1, h2), Catch::Matchers::WithinAbs(0.0, 1e-9));
  }

  SECTION("16 subcarriers over 20 MHz at 3.5 GHz: near-opposition") {
    ScenarioConfig config = preset_deepmimo_like();
    double lambda35 = config.wavelength();
    auto grid = config.frequency_grid();
    auto [h1, h2] = single_path_pair(80.0, 80.0 + lambda35 / 2.0, grid, config.center_frequency_hz);
    CHECK(dist_normalized(h1, h2) >= 1.99);
    CHECK(dist_phase_insensitive(h1, h2) <= 0.01);
  }
}

TEST_CASE("d* ignores a global phase") {
  Rng rng(102);
  ChannelVector h = oracles::random_channel(rng, 8, 1);
  ChannelVector g = oracles::random_channel(rng, 8, 1);
  double base = dist_phase_insensitive(h, g);

  // Quarter-turn rotations permute/negate components exactly, so equality is
  // exact; arbitrary angles round once when forming e^{j phi} g.
  CHECK(dist_phase_insensitive(h, scale(g, {0.0, 1.0})) == base);
  CHECK(dist_phase_insensitive(h, scale(g, {-1.0, 0.0})) == base);
  CHECK(dist_phase_insensitive(h, scale(g, {0.0, -1.0})) == base);
  for (double phi : {0.3, 1.7, 2.9, -2.2}) {
    CHECK_THAT(dist_phase_insensitive(h, rotate(g, phi)), Catch::Matchers::WithinAbs(base, 1e-12));
    CHECK_THAT(dist_phase_insensitive(h, rotate(h, phi)), Catch::Matchers::WithinAbs(0.0, 1e-7));
  }
}

TEST_CASE("orthogonal channels sit at the d* maximum sqrt(2)") {
  ChannelVector a({{1.0, 0.0}, {0.0, 0.0}}, 2, 1);
  ChannelVector b({{0.0, 0.0}, {0.0, 3.0}}, 2, 1);
  CHECK_THAT(dist_phase_insensitive(a, b), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
}

TEST_CASE("d* scale invariance under complex rescaling of either side") {
  Rng rng(103);
  for (int trial = 0; trial < 30; ++trial) {
    ChannelVector h = oracles::random_channel(rng, 5, 2);
    ChannelVector g = oracles::random_channel(rng, 5, 2);
    cdouble a{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    cdouble b{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    if (std::abs(a) < 0.1 || std::abs(b) < 0.1) continue;
    CHECK_THAT(dist_phase_insensitive(scale(h, a), scale(g, b)),
               Catch::Matchers::WithinAbs(dist_phase_insensitive(h, g), 1e-12));
  }
}

TEST_CASE("closed form agrees with the variational grid oracle") {
  Rng rng(104);
  double grid_tolerance = 2.0 * (kPi / 4096.0) * (kPi / 4096.0) + 1e-9;
  for (int trial = 0; trial < 40; ++trial) {
    ChannelVector h = oracles::random_channel(rng, 4, 2);
    ChannelVector g = oracles::random_channel(rng, 4, 2);
    double closed = dist_phase_insensitive(h, g);
    double grid = dist_phase_insensitive_variational(h, g, 4096);
    CHECK(grid + 1e-12 >= closed);  // the grid can only overshoot the true minimum
    CHECK_THAT(grid, Catch::Matchers::WithinAbs(closed, grid_tolerance));
  }
}

TEST_CASE("variational trivia") {
  Rng rng(105);
  ChannelVector h = oracles::random_channel(rng, 6, 1);
  CHECK(dist_phase_insensitive_variational(h, h, 64) == 0.0);
  CHECK_THAT(dist_phase_insensitive_variational(h, scale(h, {0.0, 1.0}), 64),
             Catch::Matchers::WithinAbs(0.0, 1e-12));
  CHECK_THROWS_AS(dist_phase_insensitive_variational(h, h, 3), DomainError);
}

TEST_CASE("optimal phase aligns the pair") {
  Rng rng(106);

  SECTION("pure rotation recovers minus the angle") {
    ChannelVector h = oracles::random_channel(rng, 6, 1);
    for (double alpha : {0.4, -1.3, 3.0}) {
      double phi = optimal_phase(h, rotate(h, alpha));
      double wrapped = std::remainder(phi + alpha, 2.0 * kPi);
      CHECK_THAT(wrapped, Catch::Matchers::WithinAbs(0.0, 1e-12));
    }
  }

  SECTION("real positive inner product needs no correction") {
    ChannelVector h({{2.0, 0.0}, {1.0, 0.0}}, 2, 1);
    ChannelVector g({{1.0, 0.0}, {1.0, 0.0}}, 2, 1);
    CHECK(optimal_phase(h, g) == 0.0);
  }

  SECTION("the aligned distance reproduces d* and the grid minimum") {
    for (int trial = 0; trial < 20; ++trial) {
      ChannelVector h = oracles::random_channel(rng, 4, 2);
      ChannelVector g = oracles::random_channel(rng, 4, 2);
      double phi = optimal_phase(h, g);
      CHECK(phi > -kPi);
      CHECK(phi <= kPi);
      double aligned = dist_normalized(h, rotate(g, phi));
      CHECK_THAT(aligned, Catch::Matchers::WithinAbs(dist_phase_insensitive(h, g), 1e-9));
      // Re{h^H e^{j phi} g} should equal |h^H g| after normalization.
      double re = 0.0, want = 0.0;
      {
        cdouble inner{0.0, 0.0};
        for (std::size_t m = 0; m < h.dimension(); ++m) inner += std::conj(h[m]) * g[m];
        want = std::abs(inner);
        cdouble rotated = inner * cdouble{std::cos(phi), std::sin(phi)};
        re = rotated.real();
      }
      CHECK_THAT(re, Catch::Matchers::WithinAbs(want, 1e-12 * want + 1e-15));
    }
  }

  SECTION("orthogonal inputs are rejected") {
    ChannelVector a({{1.0, 0.0}, {0.0, 0.0}}, 2, 1);
    ChannelVector b({{0.0, 0.0}, {1.0, 0.0}}, 2, 1);
    CHECK_THROWS_AS(optimal_phase(a, b), DomainError);
  }
}

TEST_CASE("d* metric axioms on the phase quotient") {
  Rng rng(107);
  std::vector<ChannelVector> pool;
  for (int i = 0; i < 25; ++i) pool.push_back(oracles::random_channel(rng, 4, 1));

  for (int trial = 0; trial < 10000; ++trial) {
    const auto& x = pool[static_cast<std::size_t>(rng.uniform(0.0, 25.0))];
    const auto& y = pool[static_cast<std::size_t>(rng.uniform(0.0, 25.0))];
    const auto& z = pool[static_cast<std::size_t>(rng.uniform(0.0, 25.0))];
    double xy = dist_phase_insensitive(x, y);
    double yz = dist_phase_insensitive(y, z);
    double xz = dist_phase_insensitive(x, z);
    REQUIRE(xz <= xy + yz + 1e-9);
  }
}

TEST_CASE("build_distance_matrix matches the pairwise operations") {
  Rng rng(108);
  ChannelDataset dataset = oracles::random_dataset(rng, 5, 3, 2, false);
  for (auto measure : {DistanceMeasure::euclidean, DistanceMeasure::normalized,
                       DistanceMeasure::phase_insensitive}) {
    DistanceMatrix matrix = build_distance_matrix(dataset, measure, 2);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        double expected = 0.0;
        switch (measure) {
          case DistanceMeasure::euclidean:
            expected = dist_euclidean(dataset.channel(i), dataset.channel(j));
            break;
          case DistanceMeasure::normalized:
            expected = dist_normalized(dataset.channel(i), dataset.channel(j));
            break;
          case DistanceMeasure::phase_insensitive:
            expected = dist_phase_insensitive(dataset.channel(i), dataset.channel(j));
            break;
        }
        REQUIRE(matrix.at(i, j) == expected);
      }
    }
  }
}

TEST_CASE("distance matrix edge cases") {
  ChannelDataset single({ChannelVector({{1.0, 2.0}}, 1, 1)}, {1e9});
  DistanceMatrix one = build_distance_matrix(single, DistanceMeasure::phase_insensitive);
  CHECK(one.size() == 1);
  CHECK(one.at(0, 0) == 0.0);

  Rng rng(109);
  ChannelVector h = oracles::random_channel(rng, 3, 1);
  ChannelDataset duplicated({h, h, oracles::random_channel(rng, 3, 1)}, {1e9});
  DistanceMatrix matrix = build_distance_matrix(duplicated, DistanceMeasure::phase_insensitive);
  CHECK(matrix.at(0, 1) == 0.0);

  ChannelDataset with_zero({h, ChannelVector({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}}, 3, 1)}, {1e9});
  try {
    build_distance_matrix(with_zero, DistanceMeasure::normalized);
    FAIL("expected zero-norm rejection");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("channel 1") != std::string::npos);
  }
  CHECK_NOTHROW(build_distance_matrix(with_zero, DistanceMeasure::euclidean));

  for (std::size_t i = 0; i < matrix.size(); ++i)
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      CHECK(matrix.at(i, j) >= 0.0);
      CHECK(matrix.at(i, j) <= 2.0);
    }
}

TEST_CASE("distance sweep: d* monotone, normalized oscillates with period lambda") {
  ScenarioConfig config = preset_deepmimo_like();
  double lambda = config.wavelength();
  auto grid = config.frequency_grid();

  std::vector<double> separations, d_star, d_norm;
  for (int step = 0; step <= 200; ++step) {
    double delta = static_cast<double>(step) * lambda / 20.0;  // [0, 10 lambda]
    auto [h1, h2] = single_path_pair(60.0, 60.0 + delta, grid, config.center_frequency_hz);
    separations.push_back(delta);
    d_star.push_back(dist_phase_insensitive(h1, h2));
    d_norm.push_back(dist_normalized(h1, h2));
  }
  for (std::size_t i = 0; i + 1 < d_star.size(); ++i) REQUIRE(d_star[i + 1] >= d_star[i] - 1e-12);

  int maxima = 0;
  for (std::size_t i = 1; i + 1 < d_norm.size(); ++i)
    if (d_norm[i] > d_norm[i - 1] && d_norm[i] > d_norm[i + 1]) ++maxima;
  CHECK(maxima >= 9);  // one local maximum near every odd multiple of lambda/2
}
