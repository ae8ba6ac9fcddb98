// Copyright 2026 The nmqw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace nmqw {

/// splitmix64 stream; portable and reproducible across platforms, which the
/// result documents rely on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform double in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// uniform double in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// independent substream for worker `index`
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    mix.next_u64();
    return mix;
  }

 private:
  std::uint64_t state_;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct SearchOptions {
  int max_iterations = 2000;
  double tolerance = 1e-6;   ///< stop when the candidate values agree this closely
  double initial_step = 0.5; ///< simplex edge / initial ascent step
};

struct SearchResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead simplex, maximizing. Standard reflection/expansion/contraction
/// coefficients (1, 2, 0.5) with shrink 0.5; converged when the simplex value
/// spread falls below `tolerance`.
SearchResult maximize_simplex(const Objective& f, const Eigen::VectorXd& x0,
                              const SearchOptions& opts);

/// Central-difference gradient ascent (step 1e-5) with backtracking step
/// control, maximizing. Provided as an independent cross-check of the simplex
/// search on smooth stretches of the objective.
SearchResult maximize_gradient(const Objective& f, const Eigen::VectorXd& x0,
                               const SearchOptions& opts);

}  // namespace nmqw
