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

// Command-line driver: Monte Carlo sweeps, single-realization gain profiles,
// and solving a user-supplied gain vector.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapos/harness.hpp"

namespace {

struct Options {
  std::size_t m = 48;
  int n = 8;
  double length = 0.36;
  double dmin = 0.03;
  int paths = 9;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::vector<std::string> schemes;
  double wavelength = 0.06;
  double distance = 100.0;
  double alpha = 2.8;
  double beta_db = -46.0;
  double snr_db = 100.0;
  double resolution = 0.01;
  double step = 1e-3;
  unsigned threads = 0;
  std::vector<double> values;
  std::string gains_file;
  std::optional<int> amin;
};

mapos::ExperimentSpec to_spec(const Options& opt, mapos::ExperimentKind kind) {
  mapos::ExperimentSpec spec;
  spec.kind = kind;
  spec.values = opt.values;
  spec.scenario.wavelength = opt.wavelength;
  spec.scenario.aperture = opt.length;
  spec.scenario.min_distance = opt.dmin;
  spec.scenario.link_distance = opt.distance;
  spec.scenario.pathloss_exponent = opt.alpha;
  spec.scenario.reference_loss = mapos::from_db(opt.beta_db);
  spec.scenario.transmit_snr = mapos::from_db(opt.snr_db);
  spec.scenario.path_count = opt.paths;
  spec.point_count = opt.m;
  spec.antenna_count = opt.n;
  spec.grid_resolution = opt.resolution;
  spec.trials = opt.trials;
  spec.seed = opt.seed;
  spec.threads = opt.threads;
  if (!opt.schemes.empty()) {
    spec.schemes.clear();
    for (const auto& name : opt.schemes) {
      auto s = mapos::parse_scheme(name);
      if (!s) throw std::invalid_argument("unknown scheme '" + name + "'");
      spec.schemes.push_back(*s);
    }
  }
  return spec;
}

template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  fn(file);
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

int run_solve(const Options& opt) {
  std::ifstream in(opt.gains_file);
  if (!in) throw std::runtime_error("cannot open '" + opt.gains_file + "'");
  const std::vector<double> gains = mapos::read_gains(in);

  int gap = 0;
  if (opt.amin) {
    gap = *opt.amin;
  } else {
    const auto grid = mapos::make_grid(opt.length, gains.size(), opt.dmin);
    if (grid.gap_rounded())
      std::cerr << "warning: d_min is not a multiple of the grid spacing; a_min rounded up to "
                << grid.min_index_gap() << '\n';
    gap = grid.min_index_gap();
  }

  const mapos::SolveReport report = mapos::solve_gains(gains, gap, opt.n);
  std::cout << "points " << gains.size() << " antennas " << opt.n << " a_min " << gap << '\n';
  std::cout << "optimal " << join(report.optimal.indices) << " value "
            << mapos::format_number(report.optimal.value) << '\n';
  std::cout << "initial " << join(report.initial.indices) << " value "
            << mapos::format_number(report.initial.value) << '\n';
  std::cout << "sequential " << join(report.sequential.selection.indices) << " value "
            << mapos::format_number(report.sequential.selection.value) << " lookups "
            << report.sequential.gain_lookups << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Movable-antenna position optimization on a sampled linear aperture"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  Options opt;
  app.add_option("--m", opt.m, "Number of sampling points M")->capture_default_str();
  app.add_option("--n", opt.n, "Number of antennas N")->capture_default_str();
  app.add_option("--length", opt.length, "Aperture length L in metres")->capture_default_str();
  app.add_option("--dmin", opt.dmin, "Minimum antenna distance in metres")->capture_default_str();
  app.add_option("--paths", opt.paths, "Number of propagation paths")->capture_default_str();
  app.add_option("--trials", opt.trials, "Channel realizations per sweep value")->capture_default_str();
  app.add_option("--seed", opt.seed, "Master seed")->capture_default_str();
  app.add_option("--out", opt.out, "Output CSV path (stdout when omitted)");
  app.add_option("--schemes", opt.schemes, "Comma-separated: ma-optimal,ma-sequential,fpa-as,fpa-no-as")
      ->delimiter(',');
  app.add_option("--wavelength", opt.wavelength, "Carrier wavelength in metres")->capture_default_str();
  app.add_option("--distance", opt.distance, "Link distance D in metres")->capture_default_str();
  app.add_option("--alpha", opt.alpha, "Path-loss exponent")->capture_default_str();
  app.add_option("--beta-db", opt.beta_db, "Path loss at 1 m in dB")->capture_default_str();
  app.add_option("--snr-db", opt.snr_db, "Transmit SNR P_t/sigma^2 in dB")->capture_default_str();
  app.add_option("--resolution", opt.resolution, "Sampling step for sweep-l in metres")->capture_default_str();
  app.add_option("--values", opt.values, "Comma-separated sweep values")->delimiter(',');
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::vector<std::pair<CLI::App*, mapos::ExperimentKind>> sweeps;
  for (auto kind : {mapos::ExperimentKind::kSweepM, mapos::ExperimentKind::kSweepN,
                    mapos::ExperimentKind::kSweepL, mapos::ExperimentKind::kSweepPaths}) {
    auto* sub = app.add_subcommand(std::string(mapos::experiment_name(kind)),
                                   "Mean received SNR per scheme versus " +
                                       std::string(mapos::sweep_parameter(kind)));
    sub->fallthrough();
    sweeps.emplace_back(sub, kind);
  }
  auto* profile = app.add_subcommand("profile", "Gain profile of one realization with chosen positions");
  profile->fallthrough();
  profile->add_option("--step", opt.step, "Evaluation step in metres")->capture_default_str();
  auto* solve = app.add_subcommand("solve", "Optimal and sequential selections for a gains file");
  solve->fallthrough();
  solve->add_option("gains", opt.gains_file, "One linear power gain per line")->required();
  solve->add_option("--amin", opt.amin, "Minimum index gap (default: from --dmin, --length and M)");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [sub, kind] : sweeps) {
      if (!sub->parsed()) continue;
      const mapos::ExperimentSpec spec = to_spec(opt, kind);
      const mapos::SweepResult result = mapos::run_sweep(spec);
      for (const auto& row : result.rows) {
        if (row.trials == 0)
          std::cerr << "warning: " << mapos::sweep_parameter(kind) << "="
                    << mapos::format_number(row.value) << " " << mapos::scheme_name(row.scheme)
                    << " infeasible: " << row.note << '\n';
      }
      with_output(opt.out, [&](std::ostream& os) { mapos::write_sweep_csv(os, result); });
      return 0;
    }
    if (profile->parsed()) {
      const mapos::ExperimentSpec spec = to_spec(opt, mapos::ExperimentKind::kProfile);
      with_output(opt.out, [&](std::ostream& os) { mapos::dump_profile(spec, opt.seed, os, opt.step); });
      return 0;
    }
    if (solve->parsed()) return run_solve(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
