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

#ifndef MAPOS_SELECTORS_HPP
#define MAPOS_SELECTORS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mapos/channel_model.hpp"
#include "mapos/optimal_solver.hpp"

namespace mapos {

enum class LayoutKind { kMaGrid, kFpaFixed, kFpaSelected };

// Antenna positions on the aperture (ascending) with their channel values.
struct AntennaLayout {
  std::vector<double> positions;
  std::vector<cdouble> channels;
  LayoutKind kind = LayoutKind::kMaGrid;
};

struct SequentialResult {
  Selection selection;                           // sorted
  std::vector<int> updates;                      // a*_n in iteration order
  std::vector<std::size_t> candidate_counts;     // |Psi_n|
  std::vector<std::vector<int>> candidate_sets;  // only with record_candidates
  std::size_t gain_lookups = 0;
};

// Sequential update heuristic. Antenna n (in ascending order of the initial
// indices) moves to the strongest point that keeps min_gap clearance from the
// already-updated antennas 1..n-1 and the not-yet-updated initial antennas
// n+1..N. Ties go to the smallest index. Each step reads the gain of every
// admissible point once, so gain_lookups = sum_n |Psi_n|.
//
// Throws std::invalid_argument when `initial` is empty or infeasible.
SequentialResult sequential_update(std::span<const double> gains, int min_gap,
                                   std::span<const int> initial, bool record_candidates = false);

// N fixed antennas centred on the aperture at d_min pitch:
// x_n = L/2 + (n - (N+1)/2) d_min. Throws InfeasibleError if N d_min > L.
std::vector<double> fpa_no_as_positions(double aperture, int antenna_count, double min_distance);

// The floor(L/d_min) fixed candidate positions k d_min, k = 1..L/d_min. When
// L/d_min is integral they are generated as L (k / K) so that they coincide
// bit-for-bit with the sampling grid of K points.
std::vector<double> fpa_candidate_positions(double aperture, double min_distance);

AntennaLayout fpa_no_as_layout(const PathSet& paths, double aperture, int antenna_count,
                               double min_distance, double wavelength);

// Antenna selection over the fixed candidates: the N with the largest |h|^2,
// ties to the smaller position. Throws InfeasibleError if N exceeds the
// candidate count.
AntennaLayout fpa_as_select(const PathSet& paths, double aperture, double min_distance,
                            int antenna_count, double wavelength);

// Grid indices for arbitrary positions. Positions landing on a grid point map
// exactly; others snap to the nearest point and are then pushed right (and,
// if they overrun the aperture, left) until min_gap holds. Throws
// InfeasibleError when no repair exists.
std::vector<int> map_to_grid(std::span<const double> positions, const SamplingGrid& grid);

// {1, 1 + a_min, 1 + 2 a_min, ...}.
std::vector<int> leftmost_packing(std::size_t point_count, int min_gap, int antenna_count);

// Grid analogue of fixed-antenna selection: the N strongest of the points
// a_min, 2 a_min, ..., or leftmost_packing when there are fewer than N.
std::vector<int> spaced_selection_init(std::span<const double> gains, int min_gap, int antenna_count);

struct MrtResult {
  double power = 0.0;                 // P_t * sum |h_n|^2
  double beamformed_power = 0.0;      // |w^H h|^2, evaluated through w
  std::vector<cdouble> beamformer;
  bool degenerate = false;            // all-zero channel, w undefined
};

// Maximum-ratio transmission over the channels of the active antennas. The
// channel vector is h = conj(channels), w = sqrt(P_t) h / ||h||.
MrtResult mrt_received_power(std::span<const cdouble> channels, double transmit_power);

}  // namespace mapos

#endif  // MAPOS_SELECTORS_HPP
