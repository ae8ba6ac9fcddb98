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
#include <optional>
#include <string>
#include <vector>

#include "nmqw/qmath.hpp"
#include "nmqw/tomography.hpp"

namespace nmqw {

/// Trace distances D(t_k) of one evolving state pair; values live in [0, 1].
struct DistanceTrajectory {
  std::vector<double> times;
  std::vector<double> values;
};

/// How raw search parameters map to a state pair.
///   OrthogonalPure: psi1 = normalize(raw1), psi2 = normalize of raw2 with
///                   its psi1 component projected out (the default; optima
///                   are known to be orthogonal boundary pairs).
///   FreePure:       both vectors normalized independently.
///   GeneralDensity: raw vectors of length 2N^2 are complex N x N factors G,
///                   rho = G G^dagger / tr(G G^dagger). Kept for validating
///                   that unrestricted pairs do no better.
enum class PairMode { OrthogonalPure, FreePure, GeneralDensity };

std::string to_string(PairMode mode);
std::optional<PairMode> pair_mode_from_string(const std::string& name);

/// Raw optimizer parameters for one pair: real/imaginary interleaved vectors
/// (length 2N in the pure modes, 2N^2 for GeneralDensity).
struct PairParams {
  Eigen::VectorXd raw1;
  Eigen::VectorXd raw2;
  PairMode mode = PairMode::OrthogonalPure;
};

enum class SearchMethod { Simplex, Gradient };

std::string to_string(SearchMethod method);
std::optional<SearchMethod> search_method_from_string(const std::string& name);

struct OptimizerOptions {
  PairMode mode = PairMode::OrthogonalPure;
  SearchMethod method = SearchMethod::Simplex;
  int restarts = 64;
  int max_iterations = 2000;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  int threads = 0;  ///< 0 = hardware concurrency
};

struct OptimizerDiagnostics {
  int restarts = 0;
  std::uint64_t seed = 0;
  std::string mode;
  std::string method;
  int max_iterations = 0;
  double tolerance = 0.0;
  int best_restart = -1;        ///< lowest index attaining the best value
  long total_iterations = 0;
  int converged_restarts = 0;
  int abandoned_restarts = 0;   ///< degenerate starts dropped after one retry
  double floor_value = 0.0;     ///< best objective over prepared-state pairings
};

/// One quantification outcome: the measure, the attaining pair, its distance
/// trajectory, and how the search went. `value` always equals the
/// positive-increment sum of `trajectory`.
struct BLPResult {
  double value = 0.0;
  PairParams pair;
  ComplexMatrix rho1;
  ComplexMatrix rho2;
  DistanceTrajectory trajectory;
  OptimizerDiagnostics diagnostics;
};

/// D(rho1, rho2) = sum |eigenvalues(rho1 - rho2)| / 2.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Pointwise trace distance of two equally long state trajectories.
DistanceTrajectory distance_trajectory(const std::vector<DensityMatrix>& dyn1,
                                       const std::vector<DensityMatrix>& dyn2,
                                       const std::vector<double>& times);

/// Discrete accumulation of trace-distance growth:
/// sum_k max(0, D_{k+1} - D_k). Zero for monotone non-increasing
/// trajectories; needs at least two samples.
double blp_functional(const DistanceTrajectory& traj);

/// Maximize the functional over initial-state pairs evolved through the
/// basis dataset. Multi-start search with deterministic per-restart seeds;
/// the result is never below the best prepared-state pairing (evaluated
/// automatically as a floor).
BLPResult optimize_pair(const DynamicsDataset& basis, const OptimizerOptions& opts = {});

/// Exhaustive scan over orthogonal antipodal pure qubit pairs on a Bloch
/// angle grid (theta inclusive of both poles, phi periodic). N = 2 only;
/// deterministic.
BLPResult grid_scan_qubit(const DynamicsDataset& basis, int n_theta = 200,
                          int n_phi = 400);

}  // namespace nmqw
