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

#include "mapos/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mapos {

namespace {

constexpr double kIntegralTolerance = 1e-9;

bool near_integer(double x, double& nearest) {
  nearest = std::round(x);
  return std::abs(x - nearest) <= kIntegralTolerance * std::max(1.0, std::abs(x));
}

std::size_t candidate_count(double aperture, double min_distance) {
  if (!(aperture > 0.0) || !(min_distance > 0.0))
    throw std::invalid_argument("aperture and minimum distance must be positive");
  const double ratio = aperture / min_distance;
  double nearest = 0.0;
  if (near_integer(ratio, nearest)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(ratio));
}

}  // namespace

SequentialResult sequential_update(std::span<const double> gains, int min_gap,
                                   std::span<const int> initial, bool record_candidates) {
  if (initial.empty()) throw std::invalid_argument("initial selection is empty");
  if (min_gap < 1) throw std::invalid_argument("minimum index gap must be at least 1");
  if (!is_feasible(initial, gains.size(), min_gap))
    throw std::invalid_argument("initial selection violates the spacing constraint");

  const int points = static_cast<int>(gains.size());
  std::vector<int> current(initial.begin(), initial.end());
  SequentialResult result;
  result.updates.reserve(current.size());
  result.candidate_counts.reserve(current.size());

  std::vector<char> blocked(gains.size() + 1);
  for (std::size_t n = 0; n < current.size(); ++n) {
    // Everyone except antenna n: updated ones before it, initial ones after.
    std::fill(blocked.begin(), blocked.end(), 0);
    for (std::size_t other = 0; other < current.size(); ++other) {
      if (other == n) continue;
      const int lo = std::max(1, current[other] - min_gap + 1);
      const int hi = std::min(points, current[other] + min_gap - 1);
      for (int m = lo; m <= hi; ++m) blocked[static_cast<std::size_t>(m)] = 1;
    }

    int best = -1;
    std::size_t admissible = 0;
    std::vector<int> candidates;
    for (int m = 1; m <= points; ++m) {
      if (blocked[static_cast<std::size_t>(m)]) continue;
      ++admissible;
      if (record_candidates) candidates.push_back(m);
      if (best < 0 || gains[static_cast<std::size_t>(m - 1)] > gains[static_cast<std::size_t>(best - 1)])
        best = m;
    }
    // The initial point is always admissible, so best is set.
    current[n] = best;
    result.updates.push_back(best);
    result.candidate_counts.push_back(admissible);
    result.gain_lookups += admissible;
    if (record_candidates) result.candidate_sets.push_back(std::move(candidates));
  }

  std::sort(current.begin(), current.end());
  result.selection.value = selection_value(gains, current);
  result.selection.indices = std::move(current);
  return result;
}

std::vector<double> fpa_no_as_positions(double aperture, int antenna_count, double min_distance) {
  if (antenna_count < 1) throw std::invalid_argument("antenna count must be at least 1");
  if (!(aperture > 0.0) || !(min_distance > 0.0))
    throw std::invalid_argument("aperture and minimum distance must be positive");
  const double needed = antenna_count * min_distance;
  if (needed > aperture * (1.0 + kIntegralTolerance)) {
    throw InfeasibleError(std::to_string(antenna_count) + " fixed antennas at pitch " +
                          std::to_string(min_distance) + " m do not fit in " +
                          std::to_string(aperture) + " m");
  }
  std::vector<double> positions(static_cast<std::size_t>(antenna_count));
  const double centre_offset = (antenna_count + 1) / 2.0;
  for (int n = 1; n <= antenna_count; ++n)
    positions[static_cast<std::size_t>(n - 1)] = aperture / 2.0 + (n - centre_offset) * min_distance;
  return positions;
}

std::vector<double> fpa_candidate_positions(double aperture, double min_distance) {
  const std::size_t count = candidate_count(aperture, min_distance);
  double nearest = 0.0;
  const bool exact = near_integer(aperture / min_distance, nearest);
  std::vector<double> positions(count);
  for (std::size_t k = 1; k <= count; ++k) {
    positions[k - 1] = exact ? aperture * (static_cast<double>(k) / static_cast<double>(count))
                             : static_cast<double>(k) * min_distance;
  }
  return positions;
}

AntennaLayout fpa_no_as_layout(const PathSet& paths, double aperture, int antenna_count,
                               double min_distance, double wavelength) {
  AntennaLayout layout;
  layout.kind = LayoutKind::kFpaFixed;
  layout.positions = fpa_no_as_positions(aperture, antenna_count, min_distance);
  for (double x : layout.positions) layout.channels.push_back(field_response(paths, x, wavelength));
  return layout;
}

AntennaLayout fpa_as_select(const PathSet& paths, double aperture, double min_distance,
                            int antenna_count, double wavelength) {
  if (antenna_count < 1) throw std::invalid_argument("antenna count must be at least 1");
  const std::vector<double> candidates = fpa_candidate_positions(aperture, min_distance);
  if (static_cast<std::size_t>(antenna_count) > candidates.size()) {
    throw InfeasibleError("cannot select " + std::to_string(antenna_count) + " of " +
                          std::to_string(candidates.size()) + " fixed antennas");
  }

  std::vector<cdouble> channels(candidates.size());
  std::vector<double> power(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    channels[k] = field_response(paths, candidates[k], wavelength);
    power[k] = std::norm(channels[k]);
  }
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return power[a] > power[b]; });
  order.resize(static_cast<std::size_t>(antenna_count));
  std::sort(order.begin(), order.end());

  AntennaLayout layout;
  layout.kind = LayoutKind::kFpaSelected;
  for (std::size_t k : order) {
    layout.positions.push_back(candidates[k]);
    layout.channels.push_back(channels[k]);
  }
  return layout;
}

std::vector<int> map_to_grid(std::span<const double> positions, const SamplingGrid& grid) {
  const int points = static_cast<int>(grid.size());
  const int gap = grid.min_index_gap();
  std::vector<int> indices;
  indices.reserve(positions.size());
  for (double x : positions) {
    const double raw = x * static_cast<double>(grid.size()) / grid.aperture();
    double nearest = 0.0;
    near_integer(raw, nearest);
    indices.push_back(std::clamp(static_cast<int>(nearest), 1, points));
  }
  std::sort(indices.begin(), indices.end());
  for (std::size_t n = 1; n < indices.size(); ++n)
    indices[n] = std::max(indices[n], indices[n - 1] + gap);
  if (!indices.empty() && indices.back() > points) {
    indices.back() = points;
    for (std::size_t n = indices.size() - 1; n-- > 0;)
      indices[n] = std::min(indices[n], indices[n + 1] - gap);
  }
  if (!is_feasible(indices, grid.size(), gap))
    throw InfeasibleError("positions cannot be mapped onto the sampling grid with the required spacing");
  return indices;
}

std::vector<int> leftmost_packing(std::size_t point_count, int min_gap, int antenna_count) {
  if (!selection_fits(point_count, min_gap, antenna_count))
    throw InfeasibleError("selection does not fit on the sampling grid");
  std::vector<int> indices(static_cast<std::size_t>(antenna_count));
  for (int n = 0; n < antenna_count; ++n) indices[static_cast<std::size_t>(n)] = 1 + n * min_gap;
  return indices;
}

std::vector<int> spaced_selection_init(std::span<const double> gains, int min_gap, int antenna_count) {
  if (min_gap < 1) throw std::invalid_argument("minimum index gap must be at least 1");
  if (antenna_count < 1) throw std::invalid_argument("antenna count must be at least 1");
  std::vector<int> candidates;
  for (int m = min_gap; m <= static_cast<int>(gains.size()); m += min_gap) candidates.push_back(m);
  if (candidates.size() < static_cast<std::size_t>(antenna_count))
    return leftmost_packing(gains.size(), min_gap, antenna_count);
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    return gains[static_cast<std::size_t>(a - 1)] > gains[static_cast<std::size_t>(b - 1)];
  });
  candidates.resize(static_cast<std::size_t>(antenna_count));
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

MrtResult mrt_received_power(std::span<const cdouble> channels, double transmit_power) {
  if (channels.empty()) throw std::invalid_argument("no active antennas");
  if (!(transmit_power > 0.0)) throw std::invalid_argument("transmit power must be positive");

  MrtResult result;
  double norm_sq = 0.0;
  for (const cdouble& c : channels) norm_sq += std::norm(c);
  result.power = transmit_power * norm_sq;
  result.beamformer.assign(channels.size(), cdouble{});
  if (norm_sq == 0.0) {
    result.degenerate = true;
    return result;
  }

  const double scale = std::sqrt(transmit_power) / std::sqrt(norm_sq);
  cdouble received{};
  for (std::size_t n = 0; n < channels.size(); ++n) {
    const cdouble h = std::conj(channels[n]);
    result.beamformer[n] = scale * h;
    received += std::conj(result.beamformer[n]) * h;
  }
  result.beamformed_power = std::norm(received);
  return result;
}

}  // namespace mapos
