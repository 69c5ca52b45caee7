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

#ifndef MAPOS_CHANNEL_MODEL_HPP
#define MAPOS_CHANNEL_MODEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mapos/rng.hpp"

namespace mapos {

using cdouble = std::complex<double>;

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// Link budget and propagation parameters of one scenario. All quantities are
// linear; dB values are converted at the I/O boundary.
struct ScenarioConfig {
  double wavelength = 0.06;          // m
  double aperture = 0.36;            // L, m
  double min_distance = 0.03;        // d_min, m
  double link_distance = 100.0;      // D, m
  double pathloss_exponent = 2.8;    // alpha
  double reference_loss = std::pow(10.0, -4.6);  // beta = -46 dB at 1 m
  double transmit_snr = 1e10;        // P_t / sigma^2 (100 dB)
  int path_count = 9;

  // Large-scale gain beta * D^-alpha shared by all paths.
  double large_scale_gain() const;

  // Throws std::invalid_argument on a non-positive length, power or count.
  void validate() const;
};

// M uniformly spaced candidate positions s_m = m L / M, m = 1..M.
class SamplingGrid {
 public:
  SamplingGrid(double aperture, std::size_t point_count, double min_distance);

  std::size_t size() const { return point_count_; }
  double aperture() const { return aperture_; }
  double spacing() const { return aperture_ / static_cast<double>(point_count_); }
  double min_distance() const { return min_distance_; }

  // Smallest index separation honoring the physical minimum distance.
  int min_index_gap() const { return min_index_gap_; }

  // True when d_min / spacing was not an integer and had to be rounded up.
  bool gap_rounded() const { return gap_rounded_; }

  // Position of 1-based index m. Written as L * (m / M) so s_M == L exactly
  // and index 2m of a 2M-point grid lands on the same double as index m.
  double position(std::size_t m) const {
    return aperture_ * (static_cast<double>(m) / static_cast<double>(point_count_));
  }

  std::vector<double> positions() const;

 private:
  double aperture_;
  std::size_t point_count_;
  double min_distance_;
  int min_index_gap_;
  bool gap_rounded_;
};

// Throws std::invalid_argument for non-positive inputs.
SamplingGrid make_grid(double aperture, std::size_t point_count, double min_distance);

// One multipath realization: complex gain, angle of departure from the array
// axis, and the fraction of average power carried by each path.
struct PathSet {
  std::vector<cdouble> gain;
  std::vector<double> departure_angle;  // rad, in [0, pi]
  std::vector<double> power_fraction;   // sums to one

  std::size_t size() const { return gain.size(); }
};

// Channel values h_m and power gains |h_m|^2 at every grid point. Entry m-1
// belongs to sampling point m.
struct GainProfile {
  std::vector<cdouble> channel;
  std::vector<double> power;

  std::size_t size() const { return power.size(); }
  std::span<const double> gains() const { return power; }
};

// P i.i.d. uniform(0,1) weights normalized to sum to one.
std::vector<double> draw_power_fractions(int path_count, Rng& rng);

// gamma_i ~ CN(0, beta D^-alpha l_i), theta_i ~ U[0, pi].
PathSet draw_path_set(const ScenarioConfig& cfg, Rng& rng);

// h(x) = sum_i gamma_i exp(j 2 pi / lambda * x * cos(theta_i)).
cdouble field_response(const PathSet& paths, double position, double wavelength);

GainProfile channel_gains(const PathSet& paths, const SamplingGrid& grid, double wavelength);

}  // namespace mapos

#endif  // MAPOS_CHANNEL_MODEL_HPP
