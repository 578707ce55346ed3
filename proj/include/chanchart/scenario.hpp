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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "chanchart/array_geometry.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/text.hpp"

namespace chanchart {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Rectangle {
  double xmin = -500.0, xmax = 500.0, ymin = 30.0, ymax = 530.0;
};

/// Full parameterization of the synthetic channel generator. The base station
/// sits at the origin; users are drawn uniformly in `area`.
struct ScenarioConfig {
  double center_frequency_hz = 2.0e9;
  double bandwidth_hz = 0.0;
  std::uint32_t subcarrier_count = 1;
  ArrayGeometry geometry = ArrayGeometry::ula(32);
  std::uint32_t user_count = 256;
  Rectangle area;
  std::uint32_t paths_per_user = 1;
  double los_probability = 1.0;
  std::uint32_t scatterer_count = 0;
  double snr_db = std::numeric_limits<double>::infinity();  // inf = noiseless
  std::uint32_t snapshot_count = 1;
  std::uint64_t rng_seed = 1;

  double wavelength() const { return kSpeedOfLight / center_frequency_hz; }

  /// Subcarrier frequencies: evenly spaced around f_c spanning B in total;
  /// the single-subcarrier grid is just {f_c}.
  std::vector<double> frequency_grid() const {
    std::vector<double> grid(subcarrier_count);
    if (subcarrier_count == 1) {
      grid[0] = center_frequency_hz;
      return grid;
    }
    for (std::uint32_t s = 0; s < subcarrier_count; ++s) {
      double fraction = static_cast<double>(s) / static_cast<double>(subcarrier_count - 1) - 0.5;
      grid[s] = center_frequency_hz + bandwidth_hz * fraction;
    }
    return grid;
  }

  void validate() const {
    if (!(center_frequency_hz > 0.0)) throw DomainError("center frequency must be positive");
    if (!(bandwidth_hz >= 0.0) || !(bandwidth_hz < center_frequency_hz))
      throw DomainError("bandwidth must satisfy 0 <= B < f_c (narrowband premise)");
    if (subcarrier_count < 1) throw DomainError("subcarrier count must be at least 1");
    geometry.validate();
    if (user_count < 2) throw DomainError("scenario needs at least 2 users");
    if (!(area.xmax > area.xmin) || !(area.ymax > area.ymin))
      throw DomainError("scenario area is empty");
    if (paths_per_user < 1) throw DomainError("paths per user must be at least 1");
    if (!(los_probability >= 0.0 && los_probability <= 1.0))
      throw DomainError("LoS probability must lie in [0, 1]");
    if (los_probability < 1.0 && scatterer_count == 0)
      throw DomainError("nLoS users need at least one scatterer (los_probability < 1)");
    if (std::isnan(snr_db)) throw DomainError("snr_db must be a number or inf");
    if (snapshot_count < 1) throw DomainError("snapshot count must be at least 1");
  }
};

/// Paper-style scenario presets, at the dimensions reported for the two
/// experiment families: a 2 GHz single-subcarrier 32-antenna ULA over a
/// 1000 m x 500 m area (noisy, snapshot-averaged), and a 3.5 GHz 8x8 UPA
/// with 16 subcarriers over 20 MHz (noiseless, single snapshot).
inline ScenarioConfig preset_quadriga_like() {
  ScenarioConfig config;
  config.center_frequency_hz = 2.0e9;
  config.bandwidth_hz = 0.0;
  config.subcarrier_count = 1;
  config.geometry = ArrayGeometry::ula(32);
  config.user_count = 2048;
  config.area = Rectangle{-500.0, 500.0, 30.0, 530.0};
  config.paths_per_user = 5;
  config.los_probability = 1.0;
  config.scatterer_count = 50;
  config.snr_db = 0.0;
  config.snapshot_count = 10;
  config.rng_seed = 1;
  config.validate();
  return config;
}

inline ScenarioConfig preset_deepmimo_like() {
  ScenarioConfig config;
  config.center_frequency_hz = 3.5e9;
  config.bandwidth_hz = 20.0e6;
  config.subcarrier_count = 16;
  config.geometry = ArrayGeometry::upa(8, 8);
  config.user_count = 3000;
  config.area = Rectangle{-120.0, 120.0, 20.0, 140.0};
  config.paths_per_user = 5;
  config.los_probability = 1.0;
  config.scatterer_count = 50;
  config.snr_db = std::numeric_limits<double>::infinity();
  config.snapshot_count = 1;
  config.rng_seed = 2;
  config.validate();
  return config;
}

namespace detail {

inline std::uint64_t parse_uint_or_throw(const std::string& text, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a nonnegative integer",
                     line);
  return v;
}

}  // namespace detail

/// Write a config as a flat key=value file (SI units, '#' comments allowed).
inline void write_scenario_config(const ScenarioConfig& config, std::ostream& out) {
  using chanchart::format_double;
  out << "center_frequency_hz = " << format_double(config.center_frequency_hz) << "\n";
  out << "bandwidth_hz = " << format_double(config.bandwidth_hz) << "\n";
  out << "subcarrier_count = " << config.subcarrier_count << "\n";
  out << "array_kind = " << (config.geometry.kind == ArrayKind::ula ? "ula" : "upa") << "\n";
  out << "antennas_h = " << config.geometry.count_h << "\n";
  out << "antennas_v = " << config.geometry.count_v << "\n";
  out << "element_spacing = " << format_double(config.geometry.element_spacing) << "\n";
  out << "orientation_x = " << format_double(config.geometry.orientation.x) << "\n";
  out << "orientation_y = " << format_double(config.geometry.orientation.y) << "\n";
  out << "orientation_z = " << format_double(config.geometry.orientation.z) << "\n";
  out << "user_count = " << config.user_count << "\n";
  out << "area_xmin_m = " << format_double(config.area.xmin) << "\n";
  out << "area_xmax_m = " << format_double(config.area.xmax) << "\n";
  out << "area_ymin_m = " << format_double(config.area.ymin) << "\n";
  out << "area_ymax_m = " << format_double(config.area.ymax) << "\n";
  out << "paths_per_user = " << config.paths_per_user << "\n";
  out << "los_probability = " << format_double(config.los_probability) << "\n";
  out << "scatterer_count = " << config.scatterer_count << "\n";
  out << "snr_db = " << format_double(config.snr_db) << "\n";
  out << "snapshot_count = " << config.snapshot_count << "\n";
  out << "rng_seed = " << config.rng_seed << "\n";
}

/// Parse the key=value config format. Unknown keys and malformed values are
/// rejected with the offending 1-based line number.
inline ScenarioConfig read_scenario_config(std::istream& in) {
  ScenarioConfig config;
  std::string line;
  std::size_t line_number = 0;
  auto trim = [](std::string s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_number) + ": expected 'key = value', got '" +
                           line + "'",
                       line_number);
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(line_number) + ": empty key or value", line_number);

    auto parse_double_or_throw = [](const std::string& text, std::size_t ln) { return parse_double(text, ln); };
    using detail::parse_uint_or_throw;
    if (key == "center_frequency_hz") config.center_frequency_hz = parse_double_or_throw(value, line_number);
    else if (key == "bandwidth_hz") config.bandwidth_hz = parse_double_or_throw(value, line_number);
    else if (key == "subcarrier_count") config.subcarrier_count = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "array_kind") {
      if (value == "ula") config.geometry.kind = ArrayKind::ula;
      else if (value == "upa") config.geometry.kind = ArrayKind::upa;
      else throw ParseError("line " + std::to_string(line_number) + ": array_kind must be 'ula' or 'upa'", line_number);
    }
    else if (key == "antennas_h") config.geometry.count_h = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "antennas_v") config.geometry.count_v = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "element_spacing") config.geometry.element_spacing = parse_double_or_throw(value, line_number);
    else if (key == "orientation_x") config.geometry.orientation.x = parse_double_or_throw(value, line_number);
    else if (key == "orientation_y") config.geometry.orientation.y = parse_double_or_throw(value, line_number);
    else if (key == "orientation_z") config.geometry.orientation.z = parse_double_or_throw(value, line_number);
    else if (key == "user_count") config.user_count = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "area_xmin_m") config.area.xmin = parse_double_or_throw(value, line_number);
    else if (key == "area_xmax_m") config.area.xmax = parse_double_or_throw(value, line_number);
    else if (key == "area_ymin_m") config.area.ymin = parse_double_or_throw(value, line_number);
    else if (key == "area_ymax_m") config.area.ymax = parse_double_or_throw(value, line_number);
    else if (key == "paths_per_user") config.paths_per_user = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "los_probability") config.los_probability = parse_double_or_throw(value, line_number);
    else if (key == "scatterer_count") config.scatterer_count = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "snr_db") {
      if (value == "inf" || value == "+inf" || value == "infinity")
        config.snr_db = std::numeric_limits<double>::infinity();
      else config.snr_db = parse_double_or_throw(value, line_number);
    }
    else if (key == "snapshot_count") config.snapshot_count = static_cast<std::uint32_t>(parse_uint_or_throw(value, line_number));
    else if (key == "rng_seed") config.rng_seed = parse_uint_or_throw(value, line_number);
    else throw ParseError("line " + std::to_string(line_number) + ": unknown key '" + key + "'", line_number);
  }
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw ParseError(std::string("config invalid: ") + e.what(), line_number);
  }
  return config;
}

}  // namespace chanchart
