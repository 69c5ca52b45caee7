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

#ifndef MAPOS_HARNESS_HPP
#define MAPOS_HARNESS_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mapos/channel_model.hpp"
#include "mapos/optimal_solver.hpp"
#include "mapos/selectors.hpp"

namespace mapos {

enum class Scheme { kMaOptimal = 0, kMaSequential = 1, kFpaAs = 2, kFpaNoAs = 3 };
inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::kMaOptimal, Scheme::kMaSequential,
                                                      Scheme::kFpaAs, Scheme::kFpaNoAs};

std::string_view scheme_name(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

enum class ExperimentKind { kSweepM, kSweepN, kSweepL, kSweepPaths, kProfile, kSolve };

std::string_view experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment(std::string_view name);

// Column value of `param` in the sweep CSV: m, n, length, paths.
std::string_view sweep_parameter(ExperimentKind kind);

std::vector<double> default_sweep_values(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kSweepM;
  std::vector<double> values;  // empty selects default_sweep_values(kind)
  ScenarioConfig scenario;
  std::size_t point_count = 48;
  int antenna_count = 8;
  double grid_resolution = 0.01;  // sampling step for sweep-l, M = L / step
  int trials = 1000;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes{kAllSchemes.begin(), kAllSchemes.end()};
  unsigned threads = 0;  // 0 uses the hardware concurrency

  std::vector<double> sweep_values() const;

  // Throws std::invalid_argument on a malformed spec.
  void validate() const;
};

// Scenario after applying one sweep value.
struct SweepPoint {
  ScenarioConfig scenario;
  std::size_t point_count = 0;
  int antenna_count = 0;
};

SweepPoint resolve_point(const ExperimentSpec& spec, double value);

// Reason the scheme cannot run at this point, or nullopt when it can.
std::optional<std::string> scheme_infeasibility(const SweepPoint& point, Scheme scheme);

struct SchemeOutcome {
  double snr = 0.0;     // P_r / sigma^2, linear
  double snr_db = 0.0;
  std::vector<double> positions;
  std::vector<int> grid_indices;  // MA schemes only
};

struct TrialResult {
  std::array<std::optional<SchemeOutcome>, 4> schemes;
  std::optional<Selection> sequential_init;

  const std::optional<SchemeOutcome>& operator[](Scheme s) const {
    return schemes[static_cast<std::size_t>(s)];
  }
};

// One channel realization drawn from the (seed, trial_index) stream and
// every requested scheme evaluated on it. Throws InfeasibleError if any
// requested scheme cannot run at this sweep value.
TrialResult run_trial(const ExperimentSpec& spec, double value, std::uint64_t trial_index);

// Same, for an explicit point and scheme list.
TrialResult evaluate_schemes(const SweepPoint& point, const PathSet& paths,
                             const std::vector<Scheme>& schemes);

struct SweepRow {
  double value = 0.0;
  Scheme scheme = Scheme::kMaOptimal;
  int trials = 0;             // 0 when the scheme is infeasible here
  double mean_snr_db = 0.0;   // NaN when trials == 0
  double std_snr_db = 0.0;    // sample deviation; NaN when trials < 2
  std::string note;
};

struct SweepResult {
  ExperimentKind kind = ExperimentKind::kSweepM;
  std::vector<SweepRow> rows;  // sweep value major, spec scheme order minor
};

SweepResult run_sweep(const ExperimentSpec& spec);

// experiment,param,value,scheme,trials,mean_snr_db,std_snr_db
void write_sweep_csv(std::ostream& out, const SweepResult& result);

struct ProfileRow {
  std::string kind;    // "profile" or "marker"
  std::string scheme;  // "channel" on profile rows
  double position = 0.0;
  double gain_db = 0.0;
};

// Gain over a dense position grid for one realization, plus the positions
// each scheme picks on it.
std::vector<ProfileRow> make_profile(const ExperimentSpec& spec, std::uint64_t seed, double step = 1e-3);

// kind,scheme,position_m,gain_db
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

void dump_profile(const ExperimentSpec& spec, std::uint64_t seed, std::ostream& out, double step = 1e-3);

// One non-negative linear gain per line; blank lines and '#' comments are
// skipped. Throws std::runtime_error naming the offending line.
std::vector<double> read_gains(std::istream& in);

struct SolveReport {
  Selection optimal;
  Selection initial;
  SequentialResult sequential;
};

SolveReport solve_gains(const std::vector<double>& gains, int min_gap, int antenna_count);

// printf("%.6g").
std::string format_number(double value);

}  // namespace mapos

#endif  // MAPOS_HARNESS_HPP
