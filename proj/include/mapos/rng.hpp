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

#ifndef MAPOS_RNG_HPP
#define MAPOS_RNG_HPP

#include <cstdint>
#include <random>

namespace mapos {

// Seedable random source used by every stochastic routine in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The uniform and normal conversions are implemented here rather
// than through <random> distributions, whose algorithms are left to the
// standard library vendor, so a given seed reproduces the same draws on any
// conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one Monte Carlo trial. The stream depends only on
  // (master_seed, trial_index), so trials can be evaluated in any order or in
  // parallel without changing results.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial_index);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller. The second variate of each pair is cached.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace mapos

#endif  // MAPOS_RNG_HPP
