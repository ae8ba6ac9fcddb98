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

#include "nmqw/qwalk.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "nmqw/blp.hpp"

using namespace nmqw;
using namespace nmqw::testing;

namespace {

QWConfig config_for(int x) {
  QWConfig c;
  c.half_width = x;
  return c;
}

/// Linear extension of the reduced evolution to arbitrary Hermitian
/// operators, straight from the joint step unitary. Independent of the
/// tomography code path.
std::vector<ComplexMatrix> evolve_operator_directly(const QWConfig& config,
                                                    const ComplexMatrix& op) {
  const ComplexMatrix u = build_step_operator(config);
  ComplexVector env(2);
  env << std::sqrt(config.env_weights[0]), std::sqrt(config.env_weights[1]);
  ComplexMatrix joint = tensor_product(op, ComplexMatrix(env * env.adjoint()));
  std::vector<ComplexMatrix> out;
  for (int k = 0; k <= config.steps; ++k) {
    out.push_back(partial_trace_env(joint, config.system_dim(), 2));
    joint = u * joint * u.adjoint();
  }
  return out;
}

}  // namespace

TEST_CASE("step operator: unitary for every lattice size up to X=4") {
  for (int x = 0; x <= 4; ++x) {
    const ComplexMatrix u = build_step_operator(config_for(x));
    const int n = static_cast<int>(u.rows());
    CHECK(n == 4 * (2 * x + 1));
    CHECK((u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("step operator: X=0 reduces to phased coin toss") {
  // single site, periodic wrap: the shift is the identity
  QWConfig c = config_for(0);
  const ComplexMatrix u = build_step_operator(c);

  const double s2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix coin(2, 2);
  coin << s2, s2, s2, -s2;
  // build U_dt (coin (x) env diagonal) explicitly
  const double w[2] = {c.omega_carrier - c.omega0, c.omega_carrier + c.omega0};
  const double nn[2] = {c.n_h, c.n_v};
  const double dt[2] = {c.dt_h, c.dt_v};
  ComplexMatrix udt = ComplexMatrix::Zero(4, 4);
  for (int p = 0; p < 2; ++p)
    for (int e = 0; e < 2; ++e) {
      const double phase = nn[p] * w[e] * dt[p];
      udt(p * 2 + e, p * 2 + e) = std::complex<double>(std::cos(phase), std::sin(phase));
    }
  const ComplexMatrix want = udt * tensor_product(coin, ComplexMatrix::Identity(2, 2));
  // phases are ~4e4 rad, so a different multiplication order moves the last
  // ulp of the angle; anything structural would show up at O(1)
  CHECK((u - want).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("step operator: zero coupling is the closed Hadamard walk") {
  QWConfig c = config_for(1);
  c.dt_h = 0.0;
  c.dt_v = 0.0;
  const ComplexMatrix u = build_step_operator(c);

  const int sites = 3;
  const double s2 = 1.0 / std::sqrt(2.0);
  ComplexMatrix coin(2, 2);
  coin << s2, s2, s2, -s2;
  ComplexMatrix shift = ComplexMatrix::Zero(6, 6);
  for (int j = 0; j < sites; ++j) {
    shift(((j - 1 + sites) % sites) * 2 + 0, j * 2 + 0) = 1.0;
    shift(((j + 1) % sites) * 2 + 1, j * 2 + 1) = 1.0;
  }
  const ComplexMatrix closed =
      shift * tensor_product(ComplexMatrix::Identity(sites, sites), coin);
  CHECK((u - tensor_product(closed, ComplexMatrix::Identity(2, 2))).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("step operator: X=1 shift permutation against a hand table") {
  QWConfig c = config_for(1);
  c.dt_h = 0.0;
  c.dt_v = 0.0;  // isolate T C
  const ComplexMatrix u = build_step_operator(c);

  // sites -1, 0, +1 -> indices 0, 1, 2; coin L=0 moves left, R=1 moves right.
  // After the Hadamard, |j, L> ends at (j-1, L) and (j+1, R) with weights
  // 1/sqrt(2); enumerate all six columns of T C on the system factor.
  struct Row { int site, coin, to_site_l, to_site_r; };
  const Row rows[] = {
      {0, 0, 2, 1}, {0, 1, 2, 1},
      {1, 0, 0, 2}, {1, 1, 0, 2},
      {2, 0, 1, 0}, {2, 1, 1, 0},
  };
  const double s2 = 1.0 / std::sqrt(2.0);
  for (const Row& r : rows) {
    const int col = (r.site * 2 + r.coin) * 2 + 0;  // env index 0
    const double sign = r.coin == 1 ? -1.0 : 1.0;
    // L component lands at (to_site_l, L), R component at (to_site_r, R)
    CHECK(u((r.to_site_l * 2 + 0) * 2 + 0, col).real() == doctest::Approx(s2));
    CHECK(u((r.to_site_r * 2 + 1) * 2 + 0, col).real() == doctest::Approx(sign * s2));
  }
}

TEST_CASE("evolve_reduced: states stay physical and the t=0 slice is the input") {
  std::mt19937_64 rng(71);
  QWConfig c = config_for(1);
  c.steps = 10;
  const DensityMatrix rho0 = random_density(c.system_dim(), rng);
  const auto traj = evolve_reduced(c, rho0);
  REQUIRE(static_cast<int>(traj.size()) == c.steps + 1);
  CHECK((traj[0].matrix() - rho0.matrix()).cwiseAbs().maxCoeff() < 1e-12);
  for (const DensityMatrix& rho : traj) {
    CHECK(hermiticity_error(rho.matrix()) < 1e-10);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("evolve_reduced: dimension mismatch") {
  QWConfig c = config_for(1);
  CHECK_THROWS_WITH_AS(evolve_reduced(c, DensityMatrix(ComplexMatrix::Identity(2, 2) / 2.0)),
                       doctest::Contains("dimension"), std::invalid_argument);
}

TEST_CASE("zero coupling: trace distances are constant") {
  for (int x : {0, 1}) {
    QWConfig c = config_for(x);
    c.dt_h = 0.0;
    c.dt_v = 0.0;
    const int dim = c.system_dim();
    const auto t1 = evolve_reduced(c, pure_to_density(PureState::basis_vector(0, dim)));
    const auto t2 = evolve_reduced(c, pure_to_density(PureState::basis_vector(1, dim)));
    std::vector<double> times(c.steps + 1);
    for (int k = 0; k <= c.steps; ++k) times[k] = k;
    const DistanceTrajectory traj = distance_trajectory(t1, t2, times);
    for (double v : traj.values) CHECK(std::abs(v - traj.values[0]) < 1e-12);
    CHECK(blp_functional(traj) < 1e-12);
  }
}

TEST_CASE("the dephasing factor leaves populations alone within one step") {
  // U_dt is diagonal in the joint basis, so the diagonal of the reduced
  // state (populations) is untouched by it; only the walk part moves them
  QWConfig c = config_for(0);
  const auto traj = evolve_reduced(c, pure_to_density(PureState::basis_vector(0, 2)));

  QWConfig closed = c;
  closed.dt_h = 0.0;
  closed.dt_v = 0.0;
  const auto closed_traj =
      evolve_reduced(closed, pure_to_density(PureState::basis_vector(0, 2)));

  // one step from a coin-diagonal state: populations match the closed walk
  for (int i = 0; i < 2; ++i)
    CHECK(traj[1].matrix()(i, i).real() ==
          doctest::Approx(closed_traj[1].matrix()(i, i).real()).epsilon(1e-12));
}

TEST_CASE("prepared dataset: series counts 4 / 36 / 100") {
  for (int x : {0, 1, 2}) {
    QWConfig c = config_for(x);
    c.steps = 3;  // counts don't depend on depth
    const DynamicsDataset ds = generate_prepared_dataset(c);
    const int dim = c.system_dim();
    CHECK(static_cast<int>(ds.series.size()) == dim * dim);
    CHECK(ds.num_times() == 4);
    ds.validate();  // every series is physical
  }
}

TEST_CASE("prepared dataset: bit-identical across runs") {
  QWConfig c = config_for(1);
  c.steps = 5;
  const DynamicsDataset a = generate_prepared_dataset(c);
  const DynamicsDataset b = generate_prepared_dataset(c);
  REQUIRE(a.series.size() == b.series.size());
  for (const auto& [label, mats] : a.series) {
    const auto& other = b.series.at(label);
    for (std::size_t k = 0; k < mats.size(); ++k)
      CHECK((mats[k] - other[k]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("tomography reconstruction equals direct evolution") {
  std::mt19937_64 rng(73);
  for (int x : {0, 1}) {
    QWConfig c = config_for(x);
    c.steps = 8;
    const DynamicsDataset basis = recover_basis_dynamics(generate_prepared_dataset(c));
    for (int rep = 0; rep < 5; ++rep) {
      const DensityMatrix rho0 = random_density(c.system_dim(), rng);
      const auto direct = evolve_reduced(c, rho0);
      const auto rebuilt = reconstruct_dynamics(decompose(rho0), basis);
      for (int k = 0; k <= c.steps; ++k)
        CHECK((rebuilt[k].matrix() - direct[k].matrix()).norm() < 1e-10);
    }
  }
}

TEST_CASE("recovered basis dynamics match the direct linear extension") {
  QWConfig c = config_for(1);
  c.steps = 6;
  const DynamicsDataset basis = recover_basis_dynamics(generate_prepared_dataset(c));
  for (const auto& [label, b0] : basis_operators(c.system_dim())) {
    const auto direct = evolve_operator_directly(c, b0);
    const auto& recovered = basis.series.at(label);
    for (int k = 0; k <= c.steps; ++k)
      CHECK((recovered[k] - direct[k]).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("synthetic dephasing: closed form and edge cases") {
  const DephasingDataset frozen = synthetic_dephasing_dataset(0.0, 5);
  CHECK(frozen.analytic_value == 0.0);
  for (const auto& [id, mats] : frozen.dataset.series)
    for (const ComplexMatrix& m : mats)
      CHECK((m - mats[0]).cwiseAbs().maxCoeff() == 0.0);

  const DephasingDataset half_pi = synthetic_dephasing_dataset(std::acos(-1.0) / 2, 4);
  CHECK(half_pi.analytic_value == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(synthetic_dephasing_dataset(0.5, 1), std::invalid_argument);
}

TEST_CASE("config validation") {
  QWConfig c;
  c.steps = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("steps"), std::invalid_argument);
  c = QWConfig{};
  c.boundary = "open";
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("boundary"), std::invalid_argument);
  c = QWConfig{};
  c.env_weights = {0.7, 0.7};
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("weights"), std::invalid_argument);
  c = QWConfig{};
  c.half_width = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
