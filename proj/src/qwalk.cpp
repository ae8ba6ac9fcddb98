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

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nmqw {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

constexpr int kEnvDim = 2;

}  // namespace

std::string to_string(PhaseConvention convention) {
  return convention == PhaseConvention::Literal ? "literal" : "omega-dt";
}

void QWConfig::validate() const {
  if (half_width < 0) fail("config: X must be >= 0, got " + std::to_string(half_width));
  if (steps < 1) fail("config: steps must be >= 1, got " + std::to_string(steps));
  // dt = 0 is the closed-walk (zero-coupling) limit and is allowed
  if (dt_h < 0.0 || dt_v < 0.0) fail("config: step durations must be >= 0");
  if (!(omega0 >= 0.0) || !(omega_carrier >= 0.0))
    fail("config: frequencies must be >= 0");
  if (boundary != "periodic")
    fail("config: unsupported boundary rule '" + boundary + "' (only 'periodic')");
  if (env_weights[0] < 0.0 || env_weights[1] < 0.0 ||
      std::abs(env_weights[0] + env_weights[1] - 1.0) > 1e-12)
    fail("config: environment weights must be nonnegative and sum to 1");
}

ComplexMatrix build_step_operator(const QWConfig& config) {
  config.validate();
  const int sites = config.sites();
  const int n_sys = config.system_dim();
  const int n_joint = n_sys * kEnvDim;

  // system part: shift after Hadamard coin, coin index 0 = L/H, 1 = R/V
  ComplexMatrix coin(2, 2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  coin << inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2;

  ComplexMatrix shift = ComplexMatrix::Zero(n_sys, n_sys);
  for (int j = 0; j < sites; ++j) {
    const int left = (j - 1 + sites) % sites;
    const int right = (j + 1) % sites;
    shift(left * 2 + 0, j * 2 + 0) = 1.0;
    shift(right * 2 + 1, j * 2 + 1) = 1.0;
  }
  const ComplexMatrix walk =
      shift * tensor_product(ComplexMatrix::Identity(sites, sites), coin);

  // frequency-conditioned polarization phases
  const double freqs[kEnvDim] = {config.omega_carrier - config.omega0,
                                 config.omega_carrier + config.omega0};
  const double index_factor[2] = {config.n_h, config.n_v};
  const double durations[2] = {config.dt_h, config.dt_v};
  ComplexVector phase_diag(n_joint);
  for (int x = 0; x < sites; ++x)
    for (int coin_idx = 0; coin_idx < 2; ++coin_idx)
      for (int w = 0; w < kEnvDim; ++w) {
        double phase = freqs[w] * durations[coin_idx];
        if (config.phase_convention == PhaseConvention::Literal)
          phase *= index_factor[coin_idx];
        phase_diag[(x * 2 + coin_idx) * kEnvDim + w] =
            std::complex<double>(std::cos(phase), std::sin(phase));
      }

  ComplexMatrix step =
      tensor_product(walk, ComplexMatrix::Identity(kEnvDim, kEnvDim));
  for (int row = 0; row < n_joint; ++row) step.row(row) *= phase_diag[row];
  return step;
}

std::vector<DensityMatrix> evolve_reduced(const QWConfig& config,
                                          const DensityMatrix& rho0) {
  config.validate();
  const int n_sys = config.system_dim();
  if (rho0.dim() != n_sys)
    fail("evolve_reduced: state dimension " + std::to_string(rho0.dim()) +
         " does not match system dimension " + std::to_string(n_sys) + " for X = " +
         std::to_string(config.half_width));

  ComplexVector env(kEnvDim);
  env << std::sqrt(config.env_weights[0]), std::sqrt(config.env_weights[1]);
  const ComplexMatrix env_state = env * env.adjoint();

  const ComplexMatrix step = build_step_operator(config);
  ComplexMatrix joint = tensor_product(rho0.matrix(), env_state);

  std::vector<DensityMatrix> reduced;
  reduced.reserve(config.steps + 1);
  for (int k = 0; k <= config.steps; ++k) {
    if (k > 0) joint = step * joint * step.adjoint();
    reduced.emplace_back(partial_trace_env(joint, n_sys, kEnvDim),
                         Tolerances{1e-10, 1e-10, 1e-10});
  }
  return reduced;
}

DynamicsDataset generate_prepared_dataset(const QWConfig& config) {
  config.validate();
  const int n_sys = config.system_dim();

  DynamicsDataset ds;
  ds.flavor = DynamicsDataset::Flavor::Prepared;
  ds.dim = n_sys;
  ds.times.reserve(config.steps + 1);
  for (int k = 0; k <= config.steps; ++k) ds.times.push_back(static_cast<double>(k));

  for (const auto& [id, state] : prepared_states(n_sys)) {
    std::vector<DensityMatrix> evolved = evolve_reduced(config, pure_to_density(state));
    std::vector<ComplexMatrix> mats;
    mats.reserve(evolved.size());
    for (const DensityMatrix& rho : evolved) mats.push_back(rho.matrix());
    ds.series.emplace(id, std::move(mats));
  }

  ds.metadata["generator"] = "open-quantum-walk";
  ds.metadata["time_unit"] = "step";
  ds.metadata["coin_polarization_map"] = "L=H,R=V";
  ds.metadata["phase_convention"] = to_string(config.phase_convention);
  ds.metadata["half_width"] = std::to_string(config.half_width);
  ds.metadata["steps"] = std::to_string(config.steps);
  return ds;
}

DephasingDataset synthetic_dephasing_dataset(double delta_phase_per_step, int steps) {
  if (steps < 2) fail("synthetic_dephasing_dataset: steps must be >= 2");

  // coherence multiplier per sample; populations stay put
  std::vector<double> f(steps + 1);
  for (int k = 0; k <= steps; ++k) f[k] = std::cos(k * delta_phase_per_step);

  DynamicsDataset ds;
  ds.flavor = DynamicsDataset::Flavor::Prepared;
  ds.dim = 2;
  for (int k = 0; k <= steps; ++k) ds.times.push_back(static_cast<double>(k));

  for (const auto& [id, state] : prepared_states(2)) {
    const ComplexMatrix rho0 = pure_to_density(state).matrix();
    std::vector<ComplexMatrix> mats;
    mats.reserve(steps + 1);
    for (int k = 0; k <= steps; ++k) {
      ComplexMatrix rho = rho0;
      rho(0, 1) *= f[k];
      rho(1, 0) *= f[k];
      mats.push_back(std::move(rho));
    }
    ds.series.emplace(id, std::move(mats));
  }
  ds.metadata["generator"] = "pure-dephasing";
  ds.metadata["time_unit"] = "step";

  double analytic = 0.0;
  for (int k = 0; k < steps; ++k)
    analytic += std::max(0.0, std::abs(f[k + 1]) - std::abs(f[k]));

  return DephasingDataset{std::move(ds), analytic};
}

}  // namespace nmqw
