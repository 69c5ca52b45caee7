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

#include "mapos/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mapos {

namespace {

constexpr std::array<std::string_view, 4> kSchemeNames = {"ma-optimal", "ma-sequential", "fpa-as",
                                                          "fpa-no-as"};
constexpr std::array<std::string_view, 6> kExperimentNames = {"sweep-m", "sweep-n", "sweep-l",
                                                              "sweep-paths", "profile", "solve"};

constexpr double kIntegralTolerance = 1e-9;

bool is_sweep(ExperimentKind kind) {
  return kind == ExperimentKind::kSweepM || kind == ExperimentKind::kSweepN ||
         kind == ExperimentKind::kSweepL || kind == ExperimentKind::kSweepPaths;
}

int as_count(double value, const char* what) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) > kIntegralTolerance * std::max(1.0, std::abs(value)) || nearest < 1.0)
    throw std::invalid_argument(std::string(what) + " must be a positive integer");
  return static_cast<int>(nearest);
}

SchemeOutcome outcome_from(std::span<const cdouble> channels, double transmit_snr) {
  SchemeOutcome out;
  out.snr = mrt_received_power(channels, transmit_snr).power;
  out.snr_db = to_db(out.snr);
  return out;
}

SchemeOutcome grid_outcome(const GainProfile& profile, const SamplingGrid& grid,
                           const std::vector<int>& indices, double transmit_snr) {
  std::vector<cdouble> channels;
  channels.reserve(indices.size());
  for (int idx : indices) channels.push_back(profile.channel[static_cast<std::size_t>(idx - 1)]);
  SchemeOutcome out = outcome_from(channels, transmit_snr);
  out.grid_indices = indices;
  for (int idx : indices) out.positions.push_back(grid.position(static_cast<std::size_t>(idx)));
  return out;
}

SchemeOutcome layout_outcome(const AntennaLayout& layout, double transmit_snr) {
  SchemeOutcome out = outcome_from(layout.channels, transmit_snr);
  out.positions = layout.positions;
  return out;
}

void append_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (std::string_view f : fields) {
    if (!first) out << ',';
    out << f;
    first = false;
  }
  out << '\n';
}

}  // namespace

std::string_view scheme_name(Scheme scheme) { return kSchemeNames[static_cast<std::size_t>(scheme)]; }

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes)
    if (scheme_name(s) == name) return s;
  return std::nullopt;
}

std::string_view experiment_name(ExperimentKind kind) {
  return kExperimentNames[static_cast<std::size_t>(kind)];
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) {
  for (std::size_t i = 0; i < kExperimentNames.size(); ++i)
    if (kExperimentNames[i] == name) return static_cast<ExperimentKind>(i);
  return std::nullopt;
}

std::string_view sweep_parameter(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSweepM: return "m";
    case ExperimentKind::kSweepN: return "n";
    case ExperimentKind::kSweepL: return "length";
    case ExperimentKind::kSweepPaths: return "paths";
    default: return "";
  }
}

std::vector<double> default_sweep_values(ExperimentKind kind) {
  std::vector<double> values;
  switch (kind) {
    case ExperimentKind::kSweepM:
      for (int m = 12; m <= 72; m += 12) values.push_back(m);
      break;
    case ExperimentKind::kSweepN:
      for (int n = 1; n <= 12; ++n) values.push_back(n);
      break;
    case ExperimentKind::kSweepL:
      for (int k = 2; k <= 10; ++k) values.push_back(0.06 * k);
      break;
    case ExperimentKind::kSweepPaths:
      for (int p = 1; p <= 15; ++p) values.push_back(p);
      break;
    default:
      break;
  }
  return values;
}

std::vector<double> ExperimentSpec::sweep_values() const {
  return values.empty() ? default_sweep_values(kind) : values;
}

void ExperimentSpec::validate() const {
  scenario.validate();
  if (point_count < 1) throw std::invalid_argument("point count must be at least 1");
  if (antenna_count < 1) throw std::invalid_argument("antenna count must be at least 1");
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (!(grid_resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  if (schemes.empty()) throw std::invalid_argument("no schemes selected");
  const auto vals = sweep_values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i]))
      throw std::invalid_argument("sweep values must be positive");
    if (i > 0 && !(vals[i] > vals[i - 1]))
      throw std::invalid_argument("sweep values must be strictly increasing");
  }
}

SweepPoint resolve_point(const ExperimentSpec& spec, double value) {
  SweepPoint point{spec.scenario, spec.point_count, spec.antenna_count};
  switch (spec.kind) {
    case ExperimentKind::kSweepM:
      point.point_count = static_cast<std::size_t>(as_count(value, "sweep value M"));
      break;
    case ExperimentKind::kSweepN:
      point.antenna_count = as_count(value, "sweep value N");
      break;
    case ExperimentKind::kSweepL: {
      point.scenario.aperture = value;
      const double points = std::round(value / spec.grid_resolution);
      point.point_count = static_cast<std::size_t>(std::max(1.0, points));
      break;
    }
    case ExperimentKind::kSweepPaths:
      point.scenario.path_count = as_count(value, "sweep value path count");
      break;
    default:
      break;
  }
  point.scenario.validate();
  return point;
}

std::optional<std::string> scheme_infeasibility(const SweepPoint& point, Scheme scheme) {
  const ScenarioConfig& cfg = point.scenario;
  try {
    switch (scheme) {
      case Scheme::kMaOptimal:
      case Scheme::kMaSequential: {
        const SamplingGrid grid = make_grid(cfg.aperture, point.point_count, cfg.min_distance);
        if (!selection_fits(grid.size(), grid.min_index_gap(), point.antenna_count))
          return "M=" + std::to_string(grid.size()) + " cannot hold N=" +
                 std::to_string(point.antenna_count) + " with a_min=" +
                 std::to_string(grid.min_index_gap());
        break;
      }
      case Scheme::kFpaAs:
        if (fpa_candidate_positions(cfg.aperture, cfg.min_distance).size() <
            static_cast<std::size_t>(point.antenna_count))
          return "fewer fixed candidates than N";
        break;
      case Scheme::kFpaNoAs:
        fpa_no_as_positions(cfg.aperture, point.antenna_count, cfg.min_distance);
        break;
    }
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

TrialResult evaluate_schemes(const SweepPoint& point, const PathSet& paths,
                             const std::vector<Scheme>& schemes) {
  const ScenarioConfig& cfg = point.scenario;
  const int n = point.antenna_count;
  auto wants = [&](Scheme s) { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); };
  for (Scheme s : schemes) {
    if (auto reason = scheme_infeasibility(point, s))
      throw InfeasibleError(std::string(scheme_name(s)) + ": " + *reason);
  }

  TrialResult result;
  auto slot = [&](Scheme s) -> std::optional<SchemeOutcome>& {
    return result.schemes[static_cast<std::size_t>(s)];
  };

  std::optional<AntennaLayout> selected;
  const bool fpa_as_ok = !scheme_infeasibility(point, Scheme::kFpaAs);
  if (wants(Scheme::kFpaAs) || (wants(Scheme::kMaSequential) && fpa_as_ok))
    selected = fpa_as_select(paths, cfg.aperture, cfg.min_distance, n, cfg.wavelength);
  if (wants(Scheme::kFpaAs)) slot(Scheme::kFpaAs) = layout_outcome(*selected, cfg.transmit_snr);

  if (wants(Scheme::kFpaNoAs)) {
    slot(Scheme::kFpaNoAs) = layout_outcome(
        fpa_no_as_layout(paths, cfg.aperture, n, cfg.min_distance, cfg.wavelength), cfg.transmit_snr);
  }

  if (wants(Scheme::kMaOptimal) || wants(Scheme::kMaSequential)) {
    const SamplingGrid grid = make_grid(cfg.aperture, point.point_count, cfg.min_distance);
    const GainProfile profile = channel_gains(paths, grid, cfg.wavelength);
    const int gap = grid.min_index_gap();
    if (wants(Scheme::kMaOptimal)) {
      const Selection best = solve_optimal(profile.gains(), gap, n);
      slot(Scheme::kMaOptimal) = grid_outcome(profile, grid, best.indices, cfg.transmit_snr);
    }
    if (wants(Scheme::kMaSequential)) {
      std::vector<int> init;
      if (selected) {
        try {
          init = map_to_grid(selected->positions, grid);
        } catch (const InfeasibleError&) {
          init = leftmost_packing(grid.size(), gap, n);
        }
      } else {
        init = leftmost_packing(grid.size(), gap, n);
      }
      result.sequential_init = Selection{init, selection_value(profile.gains(), init)};
      const SequentialResult seq = sequential_update(profile.gains(), gap, init);
      slot(Scheme::kMaSequential) = grid_outcome(profile, grid, seq.selection.indices, cfg.transmit_snr);
    }
  }
  return result;
}

TrialResult run_trial(const ExperimentSpec& spec, double value, std::uint64_t trial_index) {
  const SweepPoint point = resolve_point(spec, value);
  Rng rng = Rng::for_trial(spec.seed, trial_index);
  const PathSet paths = draw_path_set(point.scenario, rng);
  return evaluate_schemes(point, paths, spec.schemes);
}

SweepResult run_sweep(const ExperimentSpec& spec) {
  if (!is_sweep(spec.kind))
    throw std::invalid_argument(std::string(experiment_name(spec.kind)) + " is not a sweep");
  spec.validate();

  SweepResult result;
  result.kind = spec.kind;
  const auto trials = static_cast<std::size_t>(spec.trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(
      spec.threads ? spec.threads : std::thread::hardware_concurrency(), static_cast<unsigned>(trials)));

  for (double value : spec.sweep_values()) {
    const SweepPoint point = resolve_point(spec, value);
    std::vector<Scheme> runnable;
    std::vector<std::optional<std::string>> reasons;
    for (Scheme s : spec.schemes) {
      reasons.push_back(scheme_infeasibility(point, s));
      if (!reasons.back()) runnable.push_back(s);
    }

    std::vector<TrialResult> outcomes(runnable.empty() ? 0 : trials);
    if (!runnable.empty()) {
      std::atomic<std::size_t> next{0};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto work = [&] {
        for (std::size_t t = next++; t < trials; t = next++) {
          try {
            Rng rng = Rng::for_trial(spec.seed, t);
            const PathSet paths = draw_path_set(point.scenario, rng);
            outcomes[t] = evaluate_schemes(point, paths, runnable);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = trials;
          }
        }
      };
      {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
      }
      if (failure) std::rethrow_exception(failure);
    }

    // Fold in trial order so the result does not depend on scheduling.
    for (std::size_t i = 0; i < spec.schemes.size(); ++i) {
      SweepRow row;
      row.value = value;
      row.scheme = spec.schemes[i];
      if (reasons[i]) {
        row.trials = 0;
        row.mean_snr_db = std::numeric_limits<double>::quiet_NaN();
        row.std_snr_db = std::numeric_limits<double>::quiet_NaN();
        row.note = *reasons[i];
        result.rows.push_back(std::move(row));
        continue;
      }
      double sum = 0.0;
      for (const TrialResult& t : outcomes) sum += t[row.scheme]->snr_db;
      const double mean = sum / static_cast<double>(trials);
      double sq = 0.0;
      for (const TrialResult& t : outcomes) {
        const double d = t[row.scheme]->snr_db - mean;
        sq += d * d;
      }
      row.trials = spec.trials;
      row.mean_snr_db = mean;
      row.std_snr_db = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1))
                                  : std::numeric_limits<double>::quiet_NaN();
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  append_row(out, {"experiment", "param", "value", "scheme", "trials", "mean_snr_db", "std_snr_db"});
  for (const SweepRow& row : result.rows) {
    append_row(out, {experiment_name(result.kind), sweep_parameter(result.kind),
                     format_number(row.value), scheme_name(row.scheme), std::to_string(row.trials),
                     format_number(row.mean_snr_db), format_number(row.std_snr_db)});
  }
}

std::vector<ProfileRow> make_profile(const ExperimentSpec& spec, std::uint64_t seed, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("profile step must be positive");
  spec.validate();
  const SweepPoint point{spec.scenario, spec.point_count, spec.antenna_count};
  const ScenarioConfig& cfg = point.scenario;
  Rng rng = Rng::for_trial(seed, 0);
  const PathSet paths = draw_path_set(cfg, rng);

  std::vector<ProfileRow> rows;
  const auto samples = static_cast<std::size_t>(std::floor(cfg.aperture / step + kIntegralTolerance));
  for (std::size_t i = 0; i <= samples; ++i) {
    const double x = static_cast<double>(i) * step;
    rows.push_back({"profile", "channel", x, to_db(std::norm(field_response(paths, x, cfg.wavelength)))});
  }

  std::vector<Scheme> runnable;
  for (Scheme s : spec.schemes)
    if (!scheme_infeasibility(point, s)) runnable.push_back(s);
  const TrialResult trial = evaluate_schemes(point, paths, runnable);
  for (Scheme s : runnable) {
    for (double x : trial[s]->positions) {
      rows.push_back({"marker", std::string(scheme_name(s)), x,
                      to_db(std::norm(field_response(paths, x, cfg.wavelength)))});
    }
  }
  return rows;
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
  append_row(out, {"kind", "scheme", "position_m", "gain_db"});
  for (const ProfileRow& row : rows)
    append_row(out, {row.kind, row.scheme, format_number(row.position), format_number(row.gain_db)});
}

void dump_profile(const ExperimentSpec& spec, std::uint64_t seed, std::ostream& out, double step) {
  write_profile_csv(out, make_profile(spec, seed, step));
}

std::vector<double> read_gains(std::istream& in) {
  std::vector<double> gains;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double g = 0.0;
    if (!(fields >> g)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::runtime_error("line " + std::to_string(line_no) + ": not a number");
    }
    std::string rest;
    if (fields >> rest) throw std::runtime_error("line " + std::to_string(line_no) + ": trailing text");
    if (!(g >= 0.0) || !std::isfinite(g))
      throw std::runtime_error("line " + std::to_string(line_no) + ": gain must be non-negative");
    gains.push_back(g);
  }
  if (gains.empty()) throw std::runtime_error("no gains read");
  return gains;
}

SolveReport solve_gains(const std::vector<double>& gains, int min_gap, int antenna_count) {
  SolveReport report;
  report.optimal = solve_optimal(gains, min_gap, antenna_count);
  const auto init = spaced_selection_init(gains, min_gap, antenna_count);
  report.initial = Selection{init, selection_value(gains, init)};
  report.sequential = sequential_update(gains, min_gap, init);
  return report;
}

}  // namespace mapos
