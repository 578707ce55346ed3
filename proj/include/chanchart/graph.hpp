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
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "chanchart/channel.hpp"
#include "chanchart/errors.hpp"
#include "chanchart/parallel.hpp"

namespace chanchart {

struct GraphEdge {
  std::uint32_t to = 0;
  double weight = 0.0;
};

/// Undirected weighted neighborhood graph; adjacency lists are sorted by
/// neighbor index and mirrored ((i,j) present iff (j,i) is, equal weight).
struct NeighborhoodGraph {
  std::size_t node_count = 0;
  std::vector<std::vector<GraphEdge>> adjacency;

  std::size_t undirected_edge_count() const {
    std::size_t directed = 0;
    for (const auto& list : adjacency) directed += list.size();
    return directed / 2;
  }
};

enum class ConnectivityPolicy { bridge, fail };

inline ConnectivityPolicy parse_connectivity_policy(const std::string& name) {
  if (name == "bridge") return ConnectivityPolicy::bridge;
  if (name == "fail") return ConnectivityPolicy::fail;
  throw DomainError("unknown connectivity policy '" + name + "'");
}

/// Label nodes by connected component (labels follow discovery order from
/// node 0); returns the per-node labels and per-component sizes.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::size_t>> connected_components(
    const NeighborhoodGraph& graph) {
  const std::size_t n = graph.node_count;
  std::vector<std::uint32_t> label(n, std::numeric_limits<std::uint32_t>::max());
  std::vector<std::size_t> sizes;
  std::vector<std::uint32_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] != std::numeric_limits<std::uint32_t>::max()) continue;
    std::uint32_t current = static_cast<std::uint32_t>(sizes.size());
    sizes.push_back(0);
    stack.push_back(static_cast<std::uint32_t>(start));
    label[start] = current;
    while (!stack.empty()) {
      std::uint32_t node = stack.back();
      stack.pop_back();
      ++sizes[current];
      for (const GraphEdge& e : graph.adjacency[node]) {
        if (label[e.to] == std::numeric_limits<std::uint32_t>::max()) {
          label[e.to] = current;
          stack.push_back(e.to);
        }
      }
    }
  }
  return {std::move(label), std::move(sizes)};
}

/// k-nearest-neighbor graph of a distance matrix: each node selects its k
/// closest others (ties broken toward the smaller index), then the directed
/// selections are symmetrized by union. Self-loops are never created.
inline NeighborhoodGraph knn_graph(const DistanceMatrix& distances, std::size_t k,
                                   unsigned threads = 1) {
  const std::size_t n = distances.size();
  if (k < 1 || k > n - 1)
    throw DomainError("neighbor count k = " + std::to_string(k) + " outside [1, N-1] for N = " +
                      std::to_string(n));

  std::vector<std::vector<std::uint32_t>> selected(n);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::pair<double, std::uint32_t>> candidates;
    for (std::size_t i = begin; i < end; ++i) {
      candidates.clear();
      candidates.reserve(n - 1);
      auto row = distances.row(i);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) candidates.emplace_back(row[j], static_cast<std::uint32_t>(j));
      std::nth_element(candidates.begin(), candidates.begin() + (k - 1), candidates.end());
      candidates.resize(k);
      std::sort(candidates.begin(), candidates.end());
      selected[i].reserve(k);
      for (const auto& [d, j] : candidates) selected[i].push_back(j);
    }
  });

  NeighborhoodGraph graph;
  graph.node_count = n;
  graph.adjacency.assign(n, {});
  std::vector<std::pair<std::uint32_t, std::uint32_t>> undirected;
  undirected.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t j : selected[i])
      undirected.emplace_back(static_cast<std::uint32_t>(std::min<std::size_t>(i, j)),
                              static_cast<std::uint32_t>(std::max<std::size_t>(i, j)));
  std::sort(undirected.begin(), undirected.end());
  undirected.erase(std::unique(undirected.begin(), undirected.end()), undirected.end());
  for (const auto& [a, b] : undirected) {
    double w = distances.at(a, b);
    graph.adjacency[a].push_back({b, w});
    graph.adjacency[b].push_back({a, w});
  }
  for (auto& list : graph.adjacency)
    std::sort(list.begin(), list.end(), [](const GraphEdge& x, const GraphEdge& y) { return x.to < y.to; });
  return graph;
}

/// Repair a disconnected graph. Policy `bridge` repeatedly adds the globally
/// minimum-distance edge joining two distinct components (ties broken by
/// lexicographic (i, j)); policy `fail` raises instead, listing component
/// sizes. Connected graphs are returned unchanged.
inline NeighborhoodGraph ensure_connected(NeighborhoodGraph graph, const DistanceMatrix& distances,
                                          ConnectivityPolicy policy) {
  if (graph.node_count != distances.size())
    throw DomainError("graph and distance matrix disagree on N");
  while (true) {
    auto [label, sizes] = connected_components(graph);
    if (sizes.size() <= 1) return graph;
    if (policy == ConnectivityPolicy::fail) {
      std::string msg = "neighborhood graph is disconnected; component sizes:";
      for (std::size_t s : sizes) msg += " " + std::to_string(s);
      throw ConnectivityError(msg, std::move(sizes));
    }
    const std::size_t n = graph.node_count;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0, best_j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto row = distances.row(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        if (label[i] == label[j]) continue;
        if (row[j] < best) {
          best = row[j];
          best_i = i;
          best_j = j;
        }
      }
    }
    GraphEdge forward{static_cast<std::uint32_t>(best_j), best};
    GraphEdge backward{static_cast<std::uint32_t>(best_i), best};
    auto insert_sorted = [](std::vector<GraphEdge>& list, GraphEdge e) {
      auto it = std::lower_bound(list.begin(), list.end(), e,
                                 [](const GraphEdge& x, const GraphEdge& y) { return x.to < y.to; });
      list.insert(it, e);
    };
    insert_sorted(graph.adjacency[best_i], forward);
    insert_sorted(graph.adjacency[best_j], backward);
  }
}

/// All-pairs shortest-path lengths over the graph (Dijkstra from every
/// source, O(N E log N) with a binary heap). The result is made exactly
/// symmetric by keeping, for each unordered pair, the row of the smaller
/// source index. A disconnected graph is an error, never an Inf entry.
inline DistanceMatrix geodesic_distances(const NeighborhoodGraph& graph, unsigned threads = 1) {
  const std::size_t n = graph.node_count;
  if (n == 0) throw DomainError("geodesics of an empty graph");
  {
    auto [label, sizes] = connected_components(graph);
    if (sizes.size() > 1) {
      std::string msg = "cannot compute geodesics on a disconnected graph; component sizes:";
      for (std::size_t s : sizes) msg += " " + std::to_string(s);
      throw ConnectivityError(msg, std::move(sizes));
    }
  }

  // CSR adjacency for cache-friendly relaxations.
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] = offsets[i] + graph.adjacency[i].size();
  std::vector<GraphEdge> edges(offsets[n]);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(graph.adjacency[i].begin(), graph.adjacency[i].end(), edges.begin() + offsets[i]);

  std::vector<double> values(n * n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    using HeapEntry = std::pair<double, std::uint32_t>;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap;
    std::vector<double> dist(n);
    for (std::size_t source = begin; source < end; ++source) {
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      dist[source] = 0.0;
      heap.push({0.0, static_cast<std::uint32_t>(source)});
      while (!heap.empty()) {
        auto [d, node] = heap.top();
        heap.pop();
        if (d > dist[node]) continue;
        for (std::size_t e = offsets[node]; e < offsets[node + 1]; ++e) {
          double candidate = d + edges[e].weight;
          if (candidate < dist[edges[e].to]) {
            dist[edges[e].to] = candidate;
            heap.push({candidate, edges[e].to});
          }
        }
      }
      std::copy(dist.begin(), dist.end(), values.begin() + source * n);
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    values[i * n + i] = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) values[j * n + i] = values[i * n + j];
  }
  return DistanceMatrix::from_values(n, std::move(values));
}

}  // namespace chanchart
