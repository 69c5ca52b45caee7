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

#ifndef MAPOS_OPTIMAL_SOLVER_HPP
#define MAPOS_OPTIMAL_SOLVER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mapos {

// No selection of the requested size satisfies the spacing constraint.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed the configured combination cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chosen sampling points, 1-based and strictly increasing, with the summed
// power gain they collect.
struct Selection {
  std::vector<int> indices;
  double value = 0.0;
};

// Sum of gains at `indices`, accumulated in the order given. Selections are
// kept sorted, so this is the ascending-index sum every solver reports.
double selection_value(std::span<const double> gains, std::span<const int> indices);

// Indices sorted, within 1..point_count, and pairwise at least min_gap apart.
bool is_feasible(std::span<const int> indices, std::size_t point_count, int min_gap);

// M >= (N - 1) * a_min + 1.
bool selection_fits(std::size_t point_count, int min_gap, int antenna_count);

struct Edge {
  int from;
  double weight;
};

// Directed acyclic graph whose edges always run from a lower to a higher
// vertex index. Vertex 0 is the source and vertex_count()-1 the sink.
class PointGraph {
 public:
  explicit PointGraph(int vertex_count);

  // Throws std::invalid_argument unless 0 <= from < to < vertex_count and the
  // edge is new.
  void add_edge(int from, int to, double weight);

  int vertex_count() const { return static_cast<int>(incoming_.size()); }
  int source() const { return 0; }
  int sink() const { return vertex_count() - 1; }

  // Incoming edges of `to`, ordered by tail vertex.
  std::span<const Edge> incoming(int to) const { return incoming_.at(static_cast<std::size_t>(to)); }

  std::optional<double> weight(int from, int to) const;

  std::size_t edge_count() const { return edge_count_; }

  // Edges touching neither the source nor the sink.
  std::size_t interior_edge_count() const;

 private:
  std::vector<std::vector<Edge>> incoming_;
  std::size_t edge_count_ = 0;
};

// Point-selection graph for M gains: vertices 0..M+1, an edge i -> j between
// sampling points whenever j - i >= min_gap, plus 0 -> j and j -> M+1 for
// every point. Edges leaving the source weigh 0; every other edge leaving i
// weighs -g_i, so a 0 -> a_1 -> ... -> a_N -> M+1 path weighs -sum g_{a_n}.
PointGraph build_point_graph(std::span<const double> gains, int min_gap);

// Layered state of the fixed-hop recursion. cost[k][v] is the weight of the
// best k-hop walk from the source to v; std::nullopt marks "no such walk".
struct DpTable {
  std::vector<std::vector<std::optional<double>>> cost;
  std::vector<std::vector<int>> predecessor;  // -1 where cost is absent
  std::size_t relaxations = 0;
};

// Fills cost[0..hops]. Among equal-cost candidates the smallest predecessor
// index wins.
DpTable fixed_hop_table(const PointGraph& graph, int hops);

struct HopPath {
  std::vector<int> vertices;  // source, ..., sink; hops + 1 entries
  double weight = 0.0;
  std::size_t relaxations = 0;
};

// Minimum-weight source -> sink path with exactly `hops` edges. Throws
// InfeasibleError when no such path exists.
HopPath fixed_hop_shortest_path(const PointGraph& graph, int hops);

// Maximum-gain selection of `antenna_count` points with index gaps of at least
// `min_gap`, found as the (N+1)-hop shortest path of build_point_graph.
Selection solve_optimal(std::span<const double> gains, int min_gap, int antenna_count);

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// C(M - (a_min - 1)(N - 1), N), saturating at UINT64_MAX; 0 when infeasible.
std::uint64_t feasible_selection_count(std::size_t point_count, int min_gap, int antenna_count);

struct EnumerationResult {
  Selection best;
  std::uint64_t combinations = 0;
};

// Exhaustive search over all feasible selections in lexicographic order;
// ties keep the lexicographically smallest tuple.
EnumerationResult brute_force_oracle(std::span<const double> gains, int min_gap, int antenna_count,
                                     std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mapos

#endif  // MAPOS_OPTIMAL_SOLVER_HPP
