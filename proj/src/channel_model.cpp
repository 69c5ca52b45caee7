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

#include "mapos/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mapos {

namespace {

// Relative slack for treating a floating ratio as an integer, e.g. 0.03*48/0.36.
constexpr double kIntegralTolerance = 1e-9;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

}  // namespace

double ScenarioConfig::large_scale_gain() const {
  return reference_loss * std::pow(link_distance, -pathloss_exponent);
}

void ScenarioConfig::validate() const {
  require_positive(wavelength, "wavelength");
  require_positive(aperture, "aperture length");
  require_positive(min_distance, "minimum antenna distance");
  require_positive(link_distance, "link distance");
  if (!(pathloss_exponent >= 0.0) || !std::isfinite(pathloss_exponent))
    throw std::invalid_argument("path-loss exponent must be non-negative and finite");
  require_positive(reference_loss, "reference path loss");
  require_positive(transmit_snr, "transmit SNR");
  if (path_count < 1)
    throw std::invalid_argument("path count must be at least 1");
}

SamplingGrid::SamplingGrid(double aperture, std::size_t point_count, double min_distance)
    : aperture_(aperture), point_count_(point_count), min_distance_(min_distance) {
  require_positive(aperture, "aperture length");
  require_positive(min_distance, "minimum antenna distance");
  if (point_count < 1)
    throw std::invalid_argument("sampling grid needs at least one point");

  const double ratio = min_distance * static_cast<double>(point_count) / aperture;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= kIntegralTolerance * std::max(1.0, ratio)) {
    min_index_gap_ = static_cast<int>(nearest);
    gap_rounded_ = false;
  } else {
    min_index_gap_ = static_cast<int>(std::ceil(ratio));
    gap_rounded_ = true;
  }
  // d_min far below the spacing still forbids two antennas on one point.
  if (min_index_gap_ < 1) {
    min_index_gap_ = 1;
    gap_rounded_ = true;
  }
}

std::vector<double> SamplingGrid::positions() const {
  std::vector<double> out(point_count_);
  for (std::size_t m = 1; m <= point_count_; ++m) out[m - 1] = position(m);
  return out;
}

SamplingGrid make_grid(double aperture, std::size_t point_count, double min_distance) {
  return SamplingGrid(aperture, point_count, min_distance);
}

std::vector<double> draw_power_fractions(int path_count, Rng& rng) {
  if (path_count < 1)
    throw std::invalid_argument("path count must be at least 1");
  std::vector<double> fractions(static_cast<std::size_t>(path_count));
  double total = 0.0;
  for (auto& f : fractions) {
    f = rng.uniform();
    total += f;
  }
  // All-zero draw has probability 2^-53P; fall back to equal shares.
  if (total <= 0.0) {
    for (auto& f : fractions) f = 1.0 / path_count;
    return fractions;
  }
  for (auto& f : fractions) f /= total;
  return fractions;
}

PathSet draw_path_set(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  PathSet paths;
  paths.power_fraction = draw_power_fractions(cfg.path_count, rng);
  const double scale = cfg.large_scale_gain();
  paths.gain.reserve(paths.power_fraction.size());
  paths.departure_angle.reserve(paths.power_fraction.size());
  for (double fraction : paths.power_fraction) {
    // CN(0, v): independent real and imaginary parts with variance v/2 each.
    const double sigma = std::sqrt(scale * fraction / 2.0);
    const double re = rng.normal();
    const double im = rng.normal();
    paths.gain.emplace_back(sigma * re, sigma * im);
    paths.departure_angle.push_back(std::numbers::pi * rng.uniform());
  }
  return paths;
}

cdouble field_response(const PathSet& paths, double position, double wavelength) {
  const double wavenumber = 2.0 * std::numbers::pi / wavelength;
  cdouble h{0.0, 0.0};
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const double phase = wavenumber * position * std::cos(paths.departure_angle[i]);
    h += paths.gain[i] * std::polar(1.0, phase);
  }
  return h;
}

GainProfile channel_gains(const PathSet& paths, const SamplingGrid& grid, double wavelength) {
  GainProfile profile;
  profile.channel.resize(grid.size());
  profile.power.resize(grid.size());
  for (std::size_t m = 1; m <= grid.size(); ++m) {
    const cdouble h = field_response(paths, grid.position(m), wavelength);
    profile.channel[m - 1] = h;
    profile.power[m - 1] = std::norm(h);
  }
  return profile;
}

}  // namespace mapos
