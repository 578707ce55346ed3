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

#include <chrono>
#include <optional>
#include <utility>

#include "chanchart/channel.hpp"
#include "chanchart/distances.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/graph.hpp"
#include "chanchart/mds.hpp"

namespace chanchart {

struct ChartingOptions {
  std::size_t target_dim = 2;
  std::size_t neighbors = 30;
  DistanceMeasure measure = DistanceMeasure::phase_insensitive;
  ConnectivityPolicy connectivity = ConnectivityPolicy::bridge;
  unsigned threads = 1;
};

/// Wall-clock seconds per pipeline stage; a stage that was not reached stays
/// disengaged. Written as soon as each stage completes, so a caller holding
/// the struct sees the completed stages even when a later stage throws.
struct StageTimings {
  std::optional<double> distance;
  std::optional<double> graph;
  std::optional<double> geodesics;
  std::optional<double> mds;
};

struct ChartingRun {
  EmbeddingResult embedding;
  StageTimings timings;
  std::optional<DistanceMatrix> distances;  // populated when keep_distances is set
};

namespace detail {

class StageClock {
 public:
  StageClock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

template <typename Fn>
auto run_stage(const char* name, std::optional<double>& slot, Fn&& fn) {
  StageClock clock;
  try {
    auto value = fn();
    slot = clock.seconds();
    return value;
  } catch (const Error& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace detail

/// The full charting pipeline: pairwise distances -> k-NN graph ->
/// connectivity repair -> geodesics -> classical MDS. One chart point per
/// training channel, in dataset order. Stage failures are rethrown as
/// StageError carrying the stage name ("distance", "graph", "geodesics",
/// "mds").
inline ChartingRun chart_channels_run(const ChannelDataset& dataset, const ChartingOptions& options,
                                      StageTimings* progress = nullptr,
                                      bool keep_distances = false) {
  ChartingRun run;
  StageTimings local;
  StageTimings& timings = progress ? *progress : local;

  DistanceMatrix distances = detail::run_stage("distance", timings.distance, [&] {
    return build_distance_matrix(dataset, options.measure, options.threads);
  });
  NeighborhoodGraph graph = detail::run_stage("graph", timings.graph, [&] {
    return ensure_connected(knn_graph(distances, options.neighbors, options.threads), distances,
                            options.connectivity);
  });
  DistanceMatrix geodesics = detail::run_stage("geodesics", timings.geodesics, [&] {
    return geodesic_distances(graph, options.threads);
  });
  run.embedding = detail::run_stage("mds", timings.mds, [&] {
    return classical_mds(geodesics, options.target_dim, options.threads);
  });
  run.timings = timings;
  if (keep_distances) run.distances = std::move(distances);
  return run;
}

/// Convenience form returning only the embedding (paper defaults D' = 2,
/// k = 30).
inline EmbeddingResult chart_channels(const ChannelDataset& dataset, std::size_t target_dim = 2,
                                      std::size_t neighbors = 30,
                                      ConnectivityPolicy connectivity = ConnectivityPolicy::bridge,
                                      unsigned threads = 1) {
  ChartingOptions options;
  options.target_dim = target_dim;
  options.neighbors = neighbors;
  options.connectivity = connectivity;
  options.threads = threads;
  return chart_channels_run(dataset, options).embedding;
}

}  // namespace chanchart
