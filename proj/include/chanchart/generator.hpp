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
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "chanchart/array_geometry.hpp"
#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"
#include "chanchart/rng.hpp"
#include "chanchart/scenario.hpp"

namespace chanchart {

/// One propagation path as seen by the base station.
struct PathComponent {
  cdouble gain;    // complex amplitude, phase included
  double delay_s;  // propagation delay
  Vec3 direction;  // unit vector from the base station toward the arrival
};

/// Superpose paths into a channel vector: h = sum_p gain_p f(tau_p) (x) e(v_p),
/// with the steering vectors evaluated at the carrier wavelength (narrowband
/// model: per-path array response does not vary across the band).
inline std::vector<cdouble> channel_from_paths(const std::vector<PathComponent>& paths,
                                               const ArrayGeometry& geometry,
                                               const std::vector<double>& frequency_grid,
                                               double center_frequency) {
  if (paths.empty()) throw DomainError("channel needs at least one path");
  double wavelength = kSpeedOfLight / center_frequency;
  std::size_t m = static_cast<std::size_t>(geometry.element_count()) * frequency_grid.size();
  std::vector<cdouble> h(m, cdouble{0.0, 0.0});
  for (const PathComponent& path : paths) {
    std::vector<cdouble> steering = steering_vector(geometry, path.direction, wavelength);
    std::vector<cdouble> frequency = frequency_vector(path.delay_s, frequency_grid, center_frequency);
    for (std::size_t s = 0; s < frequency.size(); ++s) {
      cdouble fs = path.gain * frequency[s];
      for (std::size_t a = 0; a < steering.size(); ++a) h[s * steering.size() + a] += fs * steering[a];
    }
  }
  return h;
}

/// Line-of-sight path for a user at `position`: amplitude 1/d, propagation
/// phase e^{-j 2 pi d / lambda}, delay d/c.
inline PathComponent line_of_sight_path(const Vec3& position, double wavelength) {
  double d = position.norm();
  if (d == 0.0) throw DomainError("user at the array origin has a singular LoS path");
  constexpr double two_pi = 6.28318530717958647692;
  double phase = -two_pi * d / wavelength;
  cdouble gain = cdouble{std::cos(phase), std::sin(phase)} / d;
  return PathComponent{gain, d / kSpeedOfLight, {position.x / d, position.y / d, position.z / d}};
}

/// Noiseless single-path (pure LoS) channel for a placed user. This is the
/// textbook model h / ||h|| = e^{-j 2 pi d / lambda} f(tau) (x) e(v).
inline ChannelVector make_single_path_channel(const ArrayGeometry& geometry,
                                              const std::vector<double>& frequency_grid,
                                              double center_frequency, const Vec3& position) {
  double wavelength = kSpeedOfLight / center_frequency;
  std::vector<PathComponent> paths{line_of_sight_path(position, wavelength)};
  return ChannelVector(channel_from_paths(paths, geometry, frequency_grid, center_frequency),
                       geometry.element_count(),
                       static_cast<std::uint32_t>(frequency_grid.size()));
}

namespace detail {

inline constexpr std::uint64_t kNoiseStreamTag = 0x6e6f697365ULL;  // "noise"

// Scatterers closer than this to the base station or to a user are skipped
// when selecting paths; the two-segment 1/(l1*l2) gain is singular there.
inline constexpr double kMinSegmentLength = 1e-3;

inline Vec3 draw_point_in_area(Rng& rng, const Rectangle& area) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec3 p{rng.uniform(area.xmin, area.xmax), rng.uniform(area.ymin, area.ymax), 0.0};
    if (p.norm() != 0.0) return p;  // the exact origin is singular for the 1/d gain
  }
  throw DomainError("could not draw a position away from the origin; check the scenario area");
}

}  // namespace detail

/// Generate a synthetic multipath dataset with ground-truth positions.
///
/// Deterministic given the config (seed included): the master stream draws,
/// in order, scatterer positions, scatterer reflection coefficients, user
/// positions, and per-user LoS flags; per-user measurement noise comes from
/// independent substreams so user synthesis can run on any number of threads
/// without changing a single bit of the output.
///
/// Per user: one LoS path with probability `los_probability`, plus
/// single-bounce paths over the nearest scatterers (shared across users, so
/// nearby users see similar multipath) up to `paths_per_user` paths in total.
/// A scattered path over scatterer q has delay (||q|| + ||p - q||)/c, arrival
/// direction toward the scatterer, and gain
///   refl_q * e^{-j 2 pi (l1 + l2) / lambda} / (l1 * l2),
/// with refl_q a fixed CN(0,1) reflection coefficient of the scatterer.
///
/// Noise protocol: with finite SNR, each user's channel is observed over
/// `snapshot_count` snapshots h + n_t with n_t circular complex Gaussian and
/// the snapshots are averaged; the noise variance is set so the dataset-mean
/// SNR, mean ||h||^2 / E||n||^2, equals snr_db.
inline ChannelDataset generate_scenario(const ScenarioConfig& config, unsigned threads = 1) {
  config.validate();
  const std::size_t n = config.user_count;
  const std::vector<double> grid = config.frequency_grid();
  const double wavelength = config.wavelength();
  const std::size_t m = static_cast<std::size_t>(config.geometry.element_count()) * grid.size();

  Rng master(config.rng_seed);

  std::vector<Vec3> scatterers(config.scatterer_count);
  for (Vec3& q : scatterers) q = detail::draw_point_in_area(master, config.area);
  std::vector<cdouble> reflection(config.scatterer_count);
  for (cdouble& r : reflection) r = master.complex_normal(1.0);

  std::vector<Vec3> users(n);
  for (Vec3& p : users) p = detail::draw_point_in_area(master, config.area);
  std::vector<char> has_los(n);
  for (std::size_t i = 0; i < n; ++i) has_los[i] = master.bernoulli(config.los_probability) ? 1 : 0;

  // Noiseless channels; pure geometry, safe to parallelize.
  std::vector<std::vector<cdouble>> channels(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = begin; i < end; ++i) {
      std::vector<PathComponent> paths;
      std::size_t budget = config.paths_per_user;
      if (has_los[i]) {
        paths.push_back(line_of_sight_path(users[i], wavelength));
        --budget;
      }
      if (budget > 0 && !scatterers.empty()) {
        order.clear();
        for (std::size_t q = 0; q < scatterers.size(); ++q) {
          double l1 = scatterers[q].norm();
          double l2 = (users[i] - scatterers[q]).norm();
          if (l1 < detail::kMinSegmentLength || l2 < detail::kMinSegmentLength) continue;
          order.emplace_back(l2, q);
        }
        std::sort(order.begin(), order.end());
        constexpr double two_pi = 6.28318530717958647692;
        for (std::size_t r = 0; r < std::min(budget, order.size()); ++r) {
          std::size_t q = order[r].second;
          double l1 = scatterers[q].norm();
          double l2 = order[r].first;
          double total = l1 + l2;
          double phase = -two_pi * total / wavelength;
          cdouble gain = reflection[q] * cdouble{std::cos(phase), std::sin(phase)} / (l1 * l2);
          paths.push_back(PathComponent{gain, total / kSpeedOfLight,
                                        {scatterers[q].x / l1, scatterers[q].y / l1, scatterers[q].z / l1}});
        }
      }
      if (paths.empty())
        throw DomainError("user " + std::to_string(i) + " ended up with no propagation path");
      channels[i] = channel_from_paths(paths, config.geometry, grid, config.center_frequency_hz);
    }
  });

  // Measurement noise, averaged over snapshots.
  if (std::isfinite(config.snr_db)) {
    double signal_energy = 0.0;
    for (const auto& h : channels)
      for (const cdouble& v : h) signal_energy += v.real() * v.real() + v.imag() * v.imag();
    signal_energy /= static_cast<double>(n);
    if (signal_energy == 0.0) throw DomainError("zero dataset energy; cannot scale noise");
    double snr_linear = std::pow(10.0, config.snr_db / 10.0);
    double noise_variance = signal_energy / (static_cast<double>(m) * snr_linear);
    double inv_t = 1.0 / static_cast<double>(config.snapshot_count);
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        Rng noise(substream_seed(config.rng_seed, detail::kNoiseStreamTag, i));
        std::vector<cdouble> mean_noise(m, cdouble{0.0, 0.0});
        for (std::uint32_t t = 0; t < config.snapshot_count; ++t)
          for (std::size_t k = 0; k < m; ++k) mean_noise[k] += noise.complex_normal(noise_variance);
        for (std::size_t k = 0; k < m; ++k) channels[i][k] += mean_noise[k] * inv_t;
      }
    });
  }

  std::vector<ChannelVector> wrapped;
  wrapped.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    wrapped.emplace_back(std::move(channels[i]), config.geometry.element_count(),
                         static_cast<std::uint32_t>(grid.size()));

  std::vector<double> flat_positions;
  flat_positions.reserve(2 * n);
  for (const Vec3& p : users) {
    flat_positions.push_back(p.x);
    flat_positions.push_back(p.y);
  }

  std::ostringstream meta;
  meta << "synthetic multipath scenario: N=" << n << " A=" << config.geometry.element_count()
       << " S=" << grid.size() << " f_c=" << config.center_frequency_hz << "Hz"
       << " P=" << config.paths_per_user << " seed=" << config.rng_seed;
  return ChannelDataset(std::move(wrapped), grid, PointSet(2, std::move(flat_positions)),
                        meta.str());
}

}  // namespace chanchart
