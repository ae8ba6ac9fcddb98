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

#include <complex>

#include "doctest.h"
#include "helpers.hpp"
#include "nmqw/blp.hpp"
#include "nmqw/optim.hpp"
#include "nmqw/qwalk.hpp"

using namespace nmqw;
using namespace nmqw::testing;

namespace {

DynamicsDataset dephasing_basis(double delta, int steps) {
  return recover_basis_dynamics(synthetic_dephasing_dataset(delta, steps).dataset);
}

OptimizerOptions fast_options(int restarts = 24) {
  OptimizerOptions o;
  o.restarts = restarts;
  o.max_iterations = 2500;
  o.tolerance = 1e-9;
  o.seed = 20260809;
  return o;
}

}  // namespace

TEST_CASE("simplex maximizer: quadratic bowl") {
  const Objective f = [](const Eigen::VectorXd& x) {
    return 3.0 - (x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 2.0) * (x[1] + 2.0);
  };
  SearchOptions opts;
  opts.max_iterations = 500;
  opts.tolerance = 1e-12;
  const SearchResult res = maximize_simplex(f, Eigen::Vector2d(5.0, 5.0), opts);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(res.x[1] == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("gradient maximizer agrees on the same bowl") {
  const Objective f = [](const Eigen::VectorXd& x) {
    return 3.0 - (x[0] - 1.0) * (x[0] - 1.0) - (x[1] + 2.0) * (x[1] + 2.0);
  };
  SearchOptions opts;
  opts.max_iterations = 2000;
  opts.tolerance = 1e-12;
  const SearchResult res = maximize_gradient(f, Eigen::Vector2d(5.0, 5.0), opts);
  CHECK(res.value == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("splitmix substreams are independent of worker scheduling") {
  SplitMix64 a = SplitMix64::substream(42, 3);
  SplitMix64 b = SplitMix64::substream(42, 3);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  SplitMix64 c = SplitMix64::substream(42, 4);
  CHECK(c.next_u64() != SplitMix64::substream(42, 3).next_u64());
}

TEST_CASE("optimizer recovers the closed-form dephasing measure") {
  const DephasingDataset gen = synthetic_dephasing_dataset(0.7, 20);
  const DynamicsDataset basis = recover_basis_dynamics(gen.dataset);

  const BLPResult opt = optimize_pair(basis, fast_options());
  CHECK(opt.value == doctest::Approx(gen.analytic_value).epsilon(1e-9));

  const BLPResult grid = grid_scan_qubit(basis);
  CHECK(grid.value == doctest::Approx(gen.analytic_value).epsilon(1e-12));
  CHECK(std::abs(opt.value - grid.value) < 1e-3);

  // maximum sits on the equator: both Bloch poles carry weight 1/2
  CHECK(std::abs(grid.rho1(0, 0).real() - 0.5) < 1e-12);
}

TEST_CASE("optimizer on unitary-channel data returns zero") {
  QWConfig c;
  c.half_width = 0;
  c.dt_h = 0.0;
  c.dt_v = 0.0;
  const DynamicsDataset basis = recover_basis_dynamics(generate_prepared_dataset(c));
  const BLPResult res = optimize_pair(basis, fast_options(8));
  CHECK(res.value < 1e-12);
  const BLPResult grid = grid_scan_qubit(basis, 40, 80);
  CHECK(grid.value < 1e-12);
}

TEST_CASE("optimizer vs grid on the X=0 walk") {
  QWConfig c;
  c.half_width = 0;
  const DynamicsDataset basis = recover_basis_dynamics(generate_prepared_dataset(c));
  const BLPResult opt = optimize_pair(basis, fast_options(32));
  const BLPResult grid = grid_scan_qubit(basis);
  CHECK(opt.value >= grid.value - 1e-3);
  CHECK(std::abs(opt.value - grid.value) < 1e-3);
}

TEST_CASE("result invariants: consistency, reproducibility, orthogonality") {
  const DynamicsDataset basis = dephasing_basis(1.1, 12);
  const OptimizerOptions opts = fast_options(12);
  const BLPResult a = optimize_pair(basis, opts);
  const BLPResult b = optimize_pair(basis, opts);

  // same seed, same everything
  CHECK(a.value == b.value);
  CHECK(a.diagnostics.best_restart == b.diagnostics.best_restart);
  CHECK((a.rho1 - b.rho1).cwiseAbs().maxCoeff() == 0.0);

  // value always re-derivable from its own trajectory
  CHECK(std::abs(a.value - blp_functional(a.trajectory)) < 1e-12);

  // orthogonal-pure mode delivers an orthogonal pure pair
  const std::complex<double> overlap = (a.rho1 * a.rho2).trace();
  CHECK(std::abs(overlap) < 1e-10);
  CHECK(std::abs((a.rho1 * a.rho1 - a.rho1).norm()) < 1e-10);

  // floor is recorded and never above the reported value
  CHECK(a.diagnostics.floor_value <= a.value + 1e-12);
}

TEST_CASE("the optimizer trajectory equals the public reconstruction path") {
  const DynamicsDataset basis = dephasing_basis(0.8, 10);
  const BLPResult res = optimize_pair(basis, fast_options(8));

  const Tolerances loose{1e-9, 1e-9, 1e-9};
  const auto dyn1 = reconstruct_dynamics(decompose(DensityMatrix(res.rho1, loose)), basis);
  const auto dyn2 = reconstruct_dynamics(decompose(DensityMatrix(res.rho2, loose)), basis);
  const DistanceTrajectory traj = distance_trajectory(dyn1, dyn2, basis.times);
  REQUIRE(traj.values.size() == res.trajectory.values.size());
  for (std::size_t k = 0; k < traj.values.size(); ++k)
    CHECK(std::abs(traj.values[k] - res.trajectory.values[k]) < 1e-14);
  CHECK(std::abs(blp_functional(traj) - res.value) < 1e-13);
}

TEST_CASE("optimizer value is non-decreasing in the restart budget") {
  const DynamicsDataset basis = dephasing_basis(0.9, 10);
  OptimizerOptions opts = fast_options(2);
  opts.max_iterations = 300;  // keep restarts visibly unequal
  const double v2 = optimize_pair(basis, opts).value;
  opts.restarts = 8;
  const double v8 = optimize_pair(basis, opts).value;
  opts.restarts = 16;
  const double v16 = optimize_pair(basis, opts).value;
  CHECK(v8 >= v2 - 1e-15);
  CHECK(v16 >= v8 - 1e-15);
}

TEST_CASE("thread count does not change the result") {
  const DynamicsDataset basis = dephasing_basis(0.6, 10);
  OptimizerOptions opts = fast_options(8);
  opts.threads = 1;
  const BLPResult serial = optimize_pair(basis, opts);
  opts.threads = 2;
  const BLPResult parallel = optimize_pair(basis, opts);
  CHECK(serial.value == parallel.value);
  CHECK(serial.diagnostics.best_restart == parallel.diagnostics.best_restart);
}

TEST_CASE("gradient method lands near the simplex result") {
  const DephasingDataset gen = synthetic_dephasing_dataset(0.8, 12);
  const DynamicsDataset basis = recover_basis_dynamics(gen.dataset);
  OptimizerOptions opts = fast_options(16);
  opts.method = SearchMethod::Gradient;
  opts.max_iterations = 400;
  const BLPResult grad = optimize_pair(basis, opts);
  CHECK(grad.value == doctest::Approx(gen.analytic_value).epsilon(1e-3));
}

TEST_CASE("free-pure and general-density modes do not beat orthogonal pairs") {
  const DephasingDataset gen = synthetic_dephasing_dataset(1.3, 10);
  const DynamicsDataset basis = recover_basis_dynamics(gen.dataset);

  const BLPResult ortho = optimize_pair(basis, fast_options(24));

  OptimizerOptions free_opts = fast_options(24);
  free_opts.mode = PairMode::FreePure;
  const BLPResult free_pure = optimize_pair(basis, free_opts);

  OptimizerOptions dens_opts = fast_options(24);
  dens_opts.mode = PairMode::GeneralDensity;
  dens_opts.max_iterations = 4000;
  const BLPResult general = optimize_pair(basis, dens_opts);

  CHECK(free_pure.value <= ortho.value + 1e-6);
  CHECK(general.value <= ortho.value + 1e-6);
  // and the unrestricted searches still find the boundary optimum
  CHECK(free_pure.value == doctest::Approx(ortho.value).epsilon(1e-4));
}

TEST_CASE("grid scan rejects non-qubit data") {
  QWConfig c;
  c.half_width = 1;
  c.steps = 2;
  const DynamicsDataset basis = recover_basis_dynamics(generate_prepared_dataset(c));
  CHECK_THROWS_WITH_AS(grid_scan_qubit(basis), doctest::Contains("dimension 2"),
                       std::invalid_argument);
}
