// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The mapos Authors
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

#include "mapos/optimal_solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace mapos {

namespace {

void check_arguments(std::span<const double> gains, int min_gap, int antenna_count) {
  if (gains.empty()) throw std::invalid_argument("gain profile is empty");
  if (min_gap < 1) throw std::invalid_argument("minimum index gap must be at least 1");
  if (antenna_count < 1) throw std::invalid_argument("antenna count must be at least 1");
}

void check_fits(std::size_t point_count, int min_gap, int antenna_count) {
  if (!selection_fits(point_count, min_gap, antenna_count)) {
    throw InfeasibleError("cannot place " + std::to_string(antenna_count) + " antennas " +
                          std::to_string(min_gap) + " points apart on " +
                          std::to_string(point_count) + " sampling points (needs " +
                          std::to_string((antenna_count - 1) * static_cast<long long>(min_gap) + 1) +
                          ")");
  }
}

}  // namespace

double selection_value(std::span<const double> gains, std::span<const int> indices) {
  double total = 0.0;
  for (int idx : indices) total += gains[static_cast<std::size_t>(idx - 1)];
  return total;
}

bool is_feasible(std::span<const int> indices, std::size_t point_count, int min_gap) {
  for (std::size_t n = 0; n < indices.size(); ++n) {
    if (indices[n] < 1 || static_cast<std::size_t>(indices[n]) > point_count) return false;
    if (n > 0 && indices[n] - indices[n - 1] < min_gap) return false;
  }
  return true;
}

bool selection_fits(std::size_t point_count, int min_gap, int antenna_count) {
  if (antenna_count < 1) return true;
  const auto span = static_cast<unsigned long long>(antenna_count - 1) *
                    static_cast<unsigned long long>(std::max(min_gap, 0));
  return point_count >= span + 1;
}

PointGraph::PointGraph(int vertex_count) {
  if (vertex_count < 2) throw std::invalid_argument("graph needs a source and a sink");
  incoming_.resize(static_cast<std::size_t>(vertex_count));
}

void PointGraph::add_edge(int from, int to, double weight) {
  if (from < 0 || to >= vertex_count() || from >= to)
    throw std::invalid_argument("edge must go from a lower to a higher vertex index");
  auto& list = incoming_[static_cast<std::size_t>(to)];
  auto pos = std::lower_bound(list.begin(), list.end(), from,
                              [](const Edge& e, int v) { return e.from < v; });
  if (pos != list.end() && pos->from == from)
    throw std::invalid_argument("duplicate edge");
  list.insert(pos, Edge{from, weight});
  ++edge_count_;
}

std::optional<double> PointGraph::weight(int from, int to) const {
  if (to < 0 || to >= vertex_count()) return std::nullopt;
  const auto list = incoming(to);
  auto pos = std::lower_bound(list.begin(), list.end(), from,
                              [](const Edge& e, int v) { return e.from < v; });
  if (pos == list.end() || pos->from != from) return std::nullopt;
  return pos->weight;
}

std::size_t PointGraph::interior_edge_count() const {
  std::size_t count = 0;
  for (int to = 1; to < sink(); ++to) {
    for (const Edge& e : incoming(to))
      if (e.from != source()) ++count;
  }
  return count;
}

PointGraph build_point_graph(std::span<const double> gains, int min_gap) {
  if (gains.empty()) throw std::invalid_argument("gain profile is empty");
  if (min_gap < 1) throw std::invalid_argument("minimum index gap must be at least 1");
  const int points = static_cast<int>(gains.size());
  PointGraph graph(points + 2);
  const int sink = points + 1;
  // Tails are added in ascending order, so every insertion appends.
  for (int j = 1; j <= points; ++j) graph.add_edge(0, j, 0.0);
  for (int i = 1; i <= points; ++i) {
    const double w = -gains[static_cast<std::size_t>(i - 1)];
    for (int j = i + min_gap; j <= points; ++j) graph.add_edge(i, j, w);
    graph.add_edge(i, sink, w);
  }
  return graph;
}

DpTable fixed_hop_table(const PointGraph& graph, int hops) {
  if (hops < 1) throw std::invalid_argument("hop count must be at least 1");
  const auto vertices = static_cast<std::size_t>(graph.vertex_count());
  const auto layers = static_cast<std::size_t>(hops) + 1;

  DpTable table;
  table.cost.assign(layers, std::vector<std::optional<double>>(vertices));
  table.predecessor.assign(layers, std::vector<int>(vertices, -1));
  table.cost[0][static_cast<std::size_t>(graph.source())] = 0.0;

  for (std::size_t k = 1; k < layers; ++k) {
    const auto& prev = table.cost[k - 1];
    auto& cur = table.cost[k];
    auto& pred = table.predecessor[k];
    for (int v = 1; v < graph.vertex_count(); ++v) {
      std::optional<double> best;
      int best_from = -1;
      for (const Edge& e : graph.incoming(v)) {
        const auto& tail = prev[static_cast<std::size_t>(e.from)];
        if (!tail) continue;
        ++table.relaxations;
        const double candidate = *tail + e.weight;
        if (!best || candidate < *best) {
          best = candidate;
          best_from = e.from;
        }
      }
      cur[static_cast<std::size_t>(v)] = best;
      pred[static_cast<std::size_t>(v)] = best_from;
    }
  }
  return table;
}

HopPath fixed_hop_shortest_path(const PointGraph& graph, int hops) {
  const DpTable table = fixed_hop_table(graph, hops);
  const auto sink = static_cast<std::size_t>(graph.sink());
  const auto& final_cost = table.cost[static_cast<std::size_t>(hops)][sink];
  if (!final_cost)
    throw InfeasibleError("no " + std::to_string(hops) + "-hop path from source to sink");

  HopPath path;
  path.weight = *final_cost;
  path.relaxations = table.relaxations;
  path.vertices.resize(static_cast<std::size_t>(hops) + 1);
  int v = graph.sink();
  for (int k = hops; k >= 0; --k) {
    path.vertices[static_cast<std::size_t>(k)] = v;
    if (k > 0) v = table.predecessor[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
  }
  return path;
}

Selection solve_optimal(std::span<const double> gains, int min_gap, int antenna_count) {
  check_arguments(gains, min_gap, antenna_count);
  check_fits(gains.size(), min_gap, antenna_count);

  const PointGraph graph = build_point_graph(gains, min_gap);
  const HopPath path = fixed_hop_shortest_path(graph, antenna_count + 1);

  Selection sel;
  sel.indices.assign(path.vertices.begin() + 1, path.vertices.end() - 1);
  sel.value = -path.weight;
  return sel;
}

std::uint64_t feasible_selection_count(std::size_t point_count, int min_gap, int antenna_count) {
  if (antenna_count < 1 || min_gap < 1) return 0;
  if (!selection_fits(point_count, min_gap, antenna_count)) return 0;
  // Removing a_min - 1 slack points after each of the first N - 1 antennas
  // turns the spaced selection into a plain N-subset.
  const std::uint64_t pool = point_count - static_cast<std::uint64_t>(min_gap - 1) *
                                               static_cast<std::uint64_t>(antenna_count - 1);
  const auto k = static_cast<std::uint64_t>(antenna_count);
  constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (pool - k + i) / i is exact; cancel the divisor first.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (pool - k + i) / (i / g);
    result /= g;
    if (result > limit / factor) return limit;
    result *= factor;
  }
  return result;
}

EnumerationResult brute_force_oracle(std::span<const double> gains, int min_gap, int antenna_count,
                                     std::uint64_t cap) {
  check_arguments(gains, min_gap, antenna_count);
  check_fits(gains.size(), min_gap, antenna_count);
  const std::uint64_t expected = feasible_selection_count(gains.size(), min_gap, antenna_count);
  if (expected > cap) {
    throw EnumerationCapError("exhaustive search needs " + std::to_string(expected) +
                              " combinations, cap is " + std::to_string(cap));
  }

  const int points = static_cast<int>(gains.size());
  const auto n = static_cast<std::size_t>(antenna_count);
  EnumerationResult result;
  std::optional<double> best;
  std::vector<int> current(n);

  // Odometer over strictly spaced tuples in lexicographic order.
  std::size_t depth = 0;
  current[0] = 1;
  while (true) {
    const int remaining = antenna_count - 1 - static_cast<int>(depth);
    const int upper = points - remaining * min_gap;
    if (current[depth] > upper) {
      if (depth == 0) break;
      --depth;
      ++current[depth];
      continue;
    }
    if (depth + 1 < n) {
      current[depth + 1] = current[depth] + min_gap;
      ++depth;
      continue;
    }
    ++result.combinations;
    const double value = selection_value(gains, current);
    if (!best || value > *best) {
      best = value;
      result.best.indices = current;
      result.best.value = value;
    }
    ++current[depth];
  }
  return result;
}

}  // namespace mapos
