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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <utility>

#include "mapos/channel_model.hpp"
#include "mapos/optimal_solver.hpp"
#include "oracles.hpp"

using namespace mapos;

namespace {

const std::vector<double> kToyGains = {1, 5, 2, 4, 3};

std::set<std::pair<int, int>> interior_edges(const PointGraph& g) {
  std::set<std::pair<int, int>> out;
  for (int to = 1; to < g.sink(); ++to)
    for (const Edge& e : g.incoming(to))
      if (e.from != g.source()) out.emplace(e.from, to);
  return out;
}

std::size_t expected_interior_edges(int m, int a_min) {
  if (a_min > m) return 0;
  return static_cast<std::size_t>((m - a_min) * (m - a_min + 1) / 2);
}

}  // namespace

TEST_CASE("point graph on five points with a_min = 2", "[graph]") {
  const PointGraph g = build_point_graph(kToyGains, 2);
  CHECK(g.vertex_count() == 7);
  CHECK(interior_edges(g) == std::set<std::pair<int, int>>{{1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 5}});
  CHECK(g.interior_edge_count() == 6);
  CHECK(g.edge_count() == 16);
}

TEST_CASE("point graph weights", "[graph]") {
  const PointGraph g = build_point_graph(kToyGains, 2);
  for (int j = 1; j <= 5; ++j) {
    CHECK(g.weight(0, j) == 0.0);
    CHECK(g.weight(j, 6) == -kToyGains[static_cast<std::size_t>(j - 1)]);
  }
  CHECK(g.weight(1, 4) == -1.0);
  CHECK(g.weight(2, 5) == -5.0);
  CHECK_FALSE(g.weight(1, 2).has_value());
  CHECK_FALSE(g.weight(0, 6).has_value());
}

TEST_CASE("a_min equal to M leaves only the dummy edges", "[graph]") {
  for (int m = 1; m <= 10; ++m) {
    const PointGraph g = build_point_graph(std::vector<double>(static_cast<std::size_t>(m), 1.0), m);
    CHECK(g.interior_edge_count() == 0);
    CHECK(g.edge_count() == static_cast<std::size_t>(2 * m));
  }
}

TEST_CASE("interior edge count formula", "[graph][property]") {
  for (int m = 1; m <= 60; ++m) {
    for (int a = 1; a <= m + 3; ++a) {
      const PointGraph g = build_point_graph(std::vector<double>(static_cast<std::size_t>(m), 0.5), a);
      REQUIRE(g.interior_edge_count() == expected_interior_edges(m, a));
      REQUIRE(g.edge_count() == g.interior_edge_count() + 2 * static_cast<std::size_t>(m));
    }
  }
}

TEST_CASE("generic graph rejects backward and duplicate edges", "[graph]") {
  PointGraph g(4);
  g.add_edge(0, 2, 1.0);
  CHECK_THROWS_AS(g.add_edge(2, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(2, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PointGraph(1), std::invalid_argument);
}

TEST_CASE("three-hop path on the toy profile", "[dp]") {
  const PointGraph g = build_point_graph(kToyGains, 2);
  const HopPath path = fixed_hop_shortest_path(g, 3);
  CHECK(path.vertices == std::vector<int>{0, 2, 4, 6});
  CHECK(path.weight == -9.0);
  CHECK(path.relaxations <= 3 * g.edge_count());
}

TEST_CASE("one antenna picks the strongest point", "[dp]") {
  Rng rng(2);
  for (int iter = 0; iter < 50; ++iter) {
    const auto gains = oracle::random_gains(rng, 20, false);
    const PointGraph g = build_point_graph(gains, 3);
    const HopPath path = fixed_hop_shortest_path(g, 2);
    const auto best = std::max_element(gains.begin(), gains.end());
    REQUIRE(path.vertices ==
            std::vector<int>{0, static_cast<int>(best - gains.begin()) + 1, g.sink()});
    REQUIRE(path.weight == -*best);
  }
}

TEST_CASE("too many antennas is infeasible", "[dp]") {
  const PointGraph g = build_point_graph(kToyGains, 2);
  CHECK_THROWS_AS(fixed_hop_shortest_path(g, 5), InfeasibleError);
  CHECK_THROWS_AS(solve_optimal(kToyGains, 2, 4), InfeasibleError);
  CHECK_NOTHROW(solve_optimal(kToyGains, 2, 3));
  CHECK_THROWS_AS(fixed_hop_shortest_path(g, 0), std::invalid_argument);
}

TEST_CASE("DP matches path enumeration on arbitrary weighted DAGs", "[dp][property]") {
  Rng rng(101);
  for (int iter = 0; iter < 400; ++iter) {
    const int vertices = 3 + static_cast<int>(rng.uniform() * 8);
    PointGraph g(vertices);
    for (int from = 0; from < vertices; ++from)
      for (int to = from + 1; to < vertices; ++to)
        if (rng.uniform() < 0.5) g.add_edge(from, to, std::floor(rng.uniform(-5.0, 5.0)));
    const int hops = 1 + static_cast<int>(rng.uniform() * (vertices - 1));
    const auto expected = oracle::min_hop_path_weight(g, hops);
    if (!expected) {
      REQUIRE_THROWS_AS(fixed_hop_shortest_path(g, hops), InfeasibleError);
      continue;
    }
    const HopPath path = fixed_hop_shortest_path(g, hops);
    REQUIRE(path.weight == *expected);
    REQUIRE(path.vertices.size() == static_cast<std::size_t>(hops) + 1);
    REQUIRE(path.vertices.front() == 0);
    REQUIRE(path.vertices.back() == g.sink());
    double w = 0.0;
    for (std::size_t i = 1; i < path.vertices.size(); ++i) {
      REQUIRE(path.vertices[i] > path.vertices[i - 1]);
      auto e = g.weight(path.vertices[i - 1], path.vertices[i]);
      REQUIRE(e.has_value());
      w += *e;
    }
    REQUIRE(w == path.weight);
    REQUIRE(path.relaxations <= static_cast<std::size_t>(hops) * g.edge_count());
  }
}

TEST_CASE("DP table entries are realized by their predecessor chains", "[dp][property]") {
  Rng rng(103);
  const auto gains = oracle::random_gains(rng, 14, false);
  const PointGraph g = build_point_graph(gains, 2);
  const DpTable table = fixed_hop_table(g, 6);
  for (std::size_t k = 1; k < table.cost.size(); ++k) {
    for (int v = 1; v < g.vertex_count(); ++v) {
      const auto& c = table.cost[k][static_cast<std::size_t>(v)];
      if (!c) {
        REQUIRE(table.predecessor[k][static_cast<std::size_t>(v)] == -1);
        continue;
      }
      double w = 0.0;
      int cur = v;
      for (std::size_t layer = k; layer > 0; --layer) {
        const int prev = table.predecessor[layer][static_cast<std::size_t>(cur)];
        REQUIRE(prev >= 0);
        REQUIRE(prev < cur);
        w = *g.weight(prev, cur) + w;
        cur = prev;
      }
      REQUIRE(cur == 0);
      REQUIRE_THAT(w, Catch::Matchers::WithinAbs(*c, 1e-12));
    }
  }
}

TEST_CASE("equal-cost predecessors resolve to the smallest index", "[dp]") {
  // 0 -> {1,2} -> 3, both routes weigh 2.
  PointGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(0, 2, 1.0);
  g.add_edge(1, 3, 1.0);
  g.add_edge(2, 3, 1.0);
  CHECK(fixed_hop_shortest_path(g, 2).vertices == std::vector<int>{0, 1, 3});
  CHECK(solve_optimal(std::vector<double>{2, 2, 2, 2}, 2, 2).indices == std::vector<int>{1, 3});
}

TEST_CASE("solve_optimal examples", "[solver]") {
  SECTION("toy profile") {
    const Selection s = solve_optimal(kToyGains, 2, 2);
    CHECK(s.indices == std::vector<int>{2, 4});
    CHECK(s.value == 9.0);
  }
  SECTION("a_min = 1 on 12 points keeps the 8 strongest") {
    Rng rng(7);
    for (int iter = 0; iter < 50; ++iter) {
      auto gains = oracle::random_gains(rng, 12, false);
      const Selection s = solve_optimal(gains, 1, 8);
      auto sorted = gains;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      std::vector<int> top;
      for (int m = 1; m <= 12; ++m)
        if (gains[static_cast<std::size_t>(m - 1)] >= sorted[7]) top.push_back(m);
      REQUIRE(s.indices == top);
    }
  }
  SECTION("N = M takes every point") {
    const std::vector<double> g = {0.5, 1.5, 2.5, 3.5, 4.5, 5.5};
    const Selection s = solve_optimal(g, 1, 6);
    CHECK(s.indices == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(s.value == 0.5 + 1.5 + 2.5 + 3.5 + 4.5 + 5.5);
  }
  SECTION("argument errors") {
    CHECK_THROWS_AS(solve_optimal(kToyGains, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(solve_optimal(kToyGains, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_optimal(std::vector<double>{}, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("brute force enumeration counts", "[oracle]") {
  CHECK(brute_force_oracle(kToyGains, 2, 2).combinations == 6);
  CHECK(feasible_selection_count(5, 2, 2) == 6);
  Rng rng(9);
  const auto gains = oracle::random_gains(rng, 12, false);
  CHECK(brute_force_oracle(gains, 1, 8).combinations == 495);
  CHECK(feasible_selection_count(12, 1, 8) == 495);
  CHECK(feasible_selection_count(5, 2, 4) == 0);
  CHECK(feasible_selection_count(1000, 1, 500) == std::numeric_limits<std::uint64_t>::max());
  CHECK(feasible_selection_count(48, 4, 8) == 2220075);  // C(27, 8)
}

TEST_CASE("brute force result on the toy profile", "[oracle]") {
  const auto r = brute_force_oracle(kToyGains, 2, 2);
  CHECK(r.best.indices == std::vector<int>{2, 4});
  CHECK(r.best.value == 9.0);
}

TEST_CASE("brute force errors", "[oracle]") {
  CHECK_THROWS_AS(brute_force_oracle(kToyGains, 2, 4), InfeasibleError);
  const std::vector<double> g(40, 1.0);
  CHECK_THROWS_AS(brute_force_oracle(g, 1, 20), EnumerationCapError);
  CHECK_THROWS_AS(brute_force_oracle(kToyGains, 1, 2, 5), EnumerationCapError);
  CHECK_NOTHROW(brute_force_oracle(kToyGains, 1, 2, 10));
}

TEST_CASE("brute force agrees with bitmask enumeration", "[oracle][property]") {
  Rng rng(13);
  for (int m = 1; m <= 12; ++m) {
    for (int a = 1; a <= 3; ++a) {
      for (int n = 1; n <= 4; ++n) {
        const auto gains = oracle::random_gains(rng, static_cast<std::size_t>(m), false);
        const auto ref = oracle::best_by_mask(gains, a, n);
        if (!ref) {
          REQUIRE(feasible_selection_count(static_cast<std::size_t>(m), a, n) == 0);
          REQUIRE_THROWS_AS(brute_force_oracle(gains, a, n), InfeasibleError);
          continue;
        }
        const auto r = brute_force_oracle(gains, a, n);
        REQUIRE(r.combinations == ref->feasible);
        REQUIRE(r.combinations == feasible_selection_count(static_cast<std::size_t>(m), a, n));
        REQUIRE(r.best.indices == ref->indices);
        REQUIRE(r.best.value == ref->value);
      }
    }
  }
}

TEST_CASE("optimal value equals brute force", "[solver][property]") {
  Rng rng(17);
  for (int iter = 0; iter < 2000; ++iter) {
    const int m = 1 + static_cast<int>(rng.uniform() * 14);
    const int a = 1 + static_cast<int>(rng.uniform() * 3);
    const int n = 1 + static_cast<int>(rng.uniform() * 4);
    const auto gains = oracle::random_gains(rng, static_cast<std::size_t>(m), iter % 2 == 0);
    if (!selection_fits(static_cast<std::size_t>(m), a, n)) {
      REQUIRE_THROWS_AS(solve_optimal(gains, a, n), InfeasibleError);
      continue;
    }
    const Selection dp = solve_optimal(gains, a, n);
    const auto bf = brute_force_oracle(gains, a, n);
    REQUIRE(dp.value == bf.best.value);
    REQUIRE(is_feasible(dp.indices, gains.size(), a));
    REQUIRE(dp.value == selection_value(gains, dp.indices));
  }
}

TEST_CASE("selection paths and graph paths correspond", "[graph][property]") {
  Rng rng(19);
  for (int iter = 0; iter < 300; ++iter) {
    const int m = 2 + static_cast<int>(rng.uniform() * 20);
    const int a = 1 + static_cast<int>(rng.uniform() * 4);
    const int n = 1 + static_cast<int>(rng.uniform() * 4);
    if (!selection_fits(static_cast<std::size_t>(m), a, n)) continue;
    const auto gains = oracle::random_gains(rng, static_cast<std::size_t>(m), false);
    const PointGraph g = build_point_graph(gains, a);
    const auto sel = oracle::random_feasible(rng, m, a, n);
    REQUIRE(is_feasible(sel, gains.size(), a));

    std::vector<int> walk{0};
    walk.insert(walk.end(), sel.begin(), sel.end());
    walk.push_back(m + 1);
    double w = 0.0;
    for (std::size_t i = 1; i < walk.size(); ++i) {
      auto e = g.weight(walk[i - 1], walk[i]);
      REQUIRE(e.has_value());
      w += *e;
    }
    REQUIRE(w == -selection_value(gains, sel));
  }

  // Every (N+1)-hop source-to-sink path is a feasible selection.
  const std::vector<double> gains(9, 1.0);
  const PointGraph g = build_point_graph(gains, 3);
  std::size_t paths = 0;
  std::function<void(std::vector<int>&)> walk = [&](std::vector<int>& verts) {
    if (verts.size() == 5) {
      if (verts.back() == g.sink()) {
        ++paths;
        const std::vector<int> sel(verts.begin() + 1, verts.end() - 1);
        REQUIRE(is_feasible(sel, 9, 3));
      }
      return;
    }
    for (int to = verts.back() + 1; to < g.vertex_count(); ++to) {
      if (!g.weight(verts.back(), to)) continue;
      verts.push_back(to);
      walk(verts);
      verts.pop_back();
    }
  };
  std::vector<int> start{0};
  walk(start);
  CHECK(paths == feasible_selection_count(9, 3, 3));
}

TEST_CASE("finer grids never lose optimal gain", "[solver][property]") {
  Rng rng(23);
  ScenarioConfig cfg;
  for (int iter = 0; iter < 200; ++iter) {
    const PathSet p = draw_path_set(cfg, rng);
    double previous = 0.0;
    for (std::size_t m : {12u, 24u, 48u, 96u}) {
      const SamplingGrid grid = make_grid(0.36, m, 0.03);
      const GainProfile gp = channel_gains(p, grid, 0.06);
      const double v = solve_optimal(gp.gains(), grid.min_index_gap(), 8).value;
      REQUIRE(v >= previous);
      previous = v;
    }
  }
}

TEST_CASE("scaling gains scales the value and keeps the indices", "[solver][property]") {
  Rng rng(29);
  for (int iter = 0; iter < 200; ++iter) {
    auto gains = oracle::random_gains(rng, 30, iter % 3 == 0);
    const Selection base = solve_optimal(gains, 3, 5);
    for (double c : {4.0, 0.5, 3.7}) {
      auto scaled = gains;
      for (auto& g : scaled) g *= c;
      const Selection s = solve_optimal(scaled, 3, 5);
      REQUIRE(s.indices == base.indices);
      if (c == 4.0 || c == 0.5)
        REQUIRE(s.value == c * base.value);
      else
        REQUIRE_THAT(s.value, Catch::Matchers::WithinRel(c * base.value, 1e-12));
    }
  }
}

TEST_CASE("relaxation count stays within (N+1)|E~|", "[dp]") {
  Rng rng(31);
  for (int m : {12, 24, 48, 96}) {
    for (int n : {1, 4, 8}) {
      const int a = std::max(1, m / 12);
      const auto gains = oracle::random_gains(rng, static_cast<std::size_t>(m), false);
      const PointGraph g = build_point_graph(gains, a);
      const HopPath path = fixed_hop_shortest_path(g, n + 1);
      REQUIRE(path.relaxations <= static_cast<std::size_t>(n + 1) * g.edge_count());
    }
  }
}
