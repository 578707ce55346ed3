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

#include "chanchart/generator.hpp"
#include "chanchart/pipeline.hpp"
#include "support/oracles.hpp"

using namespace chanchart;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Noiseless single-path users on a constant-radius arc; carries the true
/// angles as the y coordinate proxy via positions.
ChannelDataset arc_dataset(std::size_t n, double radius, double from_deg, double to_deg) {
  ArrayGeometry geometry = ArrayGeometry::ula(32);
  double f_c = 2.0e9;
  std::vector<ChannelVector> channels;
  std::vector<double> positions;
  for (std::size_t i = 0; i < n; ++i) {
    double angle = (from_deg + (to_deg - from_deg) * static_cast<double>(i) /
                                   static_cast<double>(n - 1)) *
                   kPi / 180.0;
    Vec3 p{radius * std::cos(angle), radius * std::sin(angle), 0.0};
    channels.push_back(make_single_path_channel(geometry, {f_c}, f_c, p));
    positions.push_back(p.x);
    positions.push_back(p.y);
  }
  return ChannelDataset(std::move(channels), {f_c}, PointSet(2, std::move(positions)));
}

}  // namespace

TEST_CASE("phase-rotated copies of one channel collapse to a single chart point") {
  Rng rng(80);
  ChannelVector h = oracles::random_channel(rng, 6, 1);
  auto rotated = [&](double phi) {
    std::vector<cdouble> entries(h.entries().begin(), h.entries().end());
    for (auto& v : entries) v *= cdouble{std::cos(phi), std::sin(phi)};
    return ChannelVector(std::move(entries), 6, 1);
  };
  ChannelDataset dataset({h, rotated(1.0), rotated(-2.4)}, {1e9});
  EmbeddingResult result = chart_channels(dataset, 2, 2);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t c = 0; c < 2; ++c)
      CHECK_THAT(result.chart.at(i, c), Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("users on an arc chart to their angular order") {
  ChannelDataset dataset = arc_dataset(256, 200.0, 45.0, 135.0);
  ChartingOptions options;
  options.target_dim = 1;
  options.neighbors = 10;
  options.threads = 2;
  ChartingRun run = chart_channels_run(dataset, options);

  std::vector<double> coordinate, angle;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    coordinate.push_back(run.embedding.chart.at(i, 0));
    angle.push_back(std::atan2(dataset.positions().at(i, 1), dataset.positions().at(i, 0)));
  }
  CHECK(std::abs(oracles::spearman(coordinate, angle)) >= 0.99);
}

TEST_CASE("charting is identical for any thread count") {
  ScenarioConfig config;
  config.user_count = 120;
  config.geometry = ArrayGeometry::ula(8);
  config.subcarrier_count = 4;
  config.bandwidth_hz = 20e6;
  config.center_frequency_hz = 3.5e9;
  config.paths_per_user = 3;
  config.scatterer_count = 15;
  config.snr_db = 10.0;
  config.snapshot_count = 4;
  config.rng_seed = 99;
  ChannelDataset dataset = generate_scenario(config, 2);

  ChartingOptions options;
  options.neighbors = 12;
  std::vector<Chart> charts;
  for (unsigned threads : {1u, 2u, 5u}) {
    options.threads = threads;
    charts.push_back(chart_channels_run(dataset, options).embedding.chart);
  }
  for (std::size_t i = 0; i < dataset.size(); ++i)
    for (std::size_t c = 0; c < 2; ++c) {
      REQUIRE(charts[0].at(i, c) == charts[1].at(i, c));
      REQUIRE(charts[0].at(i, c) == charts[2].at(i, c));
    }
}

TEST_CASE("stage failures carry the stage name and completed timings") {
  // two channel clusters, far apart; k = 1 leaves them disconnected
  std::vector<ChannelVector> channels;
  channels.emplace_back(std::vector<cdouble>{{1.0, 0.0}, {0.0, 0.0}}, 2, 1);
  channels.emplace_back(std::vector<cdouble>{{1.0, 0.01}, {0.0, 0.0}}, 2, 1);
  channels.emplace_back(std::vector<cdouble>{{0.0, 0.0}, {1.0, 0.0}}, 2, 1);
  channels.emplace_back(std::vector<cdouble>{{0.0, 0.0}, {1.0, 0.01}}, 2, 1);
  ChannelDataset dataset(std::move(channels), {1e9});

  ChartingOptions options;
  options.neighbors = 1;
  options.connectivity = ConnectivityPolicy::fail;
  StageTimings progress;
  try {
    chart_channels_run(dataset, options, &progress);
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage == "graph");
    CHECK(progress.distance.has_value());
    CHECK_FALSE(progress.graph.has_value());
    CHECK_FALSE(progress.geodesics.has_value());
    CHECK_FALSE(progress.mds.has_value());
  }
}

TEST_CASE("a full run reports timings and a finite stress") {
  Rng rng(81);
  ChannelDataset dataset = oracles::random_dataset(rng, 40, 4, 1, true);
  ChartingOptions options;
  options.neighbors = 6;
  ChartingRun run = chart_channels_run(dataset, options, nullptr, true);
  CHECK(run.timings.distance.has_value());
  CHECK(run.timings.graph.has_value());
  CHECK(run.timings.geodesics.has_value());
  CHECK(run.timings.mds.has_value());
  CHECK(run.embedding.geodesic_stress >= 0.0);
  CHECK(std::isfinite(run.embedding.geodesic_stress));
  REQUIRE(run.distances.has_value());
  CHECK(run.distances->size() == 40);
  CHECK(run.embedding.chart.count() == 40);
  CHECK(run.embedding.chart.dimension == 2);
}
