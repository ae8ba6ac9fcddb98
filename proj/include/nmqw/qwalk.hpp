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

#include <array>
#include <string>

#include "nmqw/qmath.hpp"
#include "nmqw/tomography.hpp"

namespace nmqw {

// Discrete-time quantum walk of a photon on a periodic 1D lattice of
// 2X+1 sites with a polarization coin, opened by coupling the coin to a
// two-point frequency environment. One step is
//
//   U_step = U_dt (T C),   T|j>|L> = |j-1>|L>,  T|j>|R> = |j+1>|R>,
//   C = Hadamard on the coin, periodic wraparound at the lattice edges,
//   U_dt = sum_{p,i} exp(i phase(p, w_i)) |p><p| (x) |w_i><w_i|,
//
// with coin states identified with polarizations as L=H, R=V and the two
// environment frequencies w_1 = Omega - omega0, w_2 = Omega + omega0.
//
// The per-step phase is either n_p * w * dt_p (Literal) or w * dt_p
// (OmegaDt). The step durations dt_p are direct inputs, not derived from a
// splitter thickness: the reference values for thickness (~0.5 mm) and the
// polarization-dependent light speed are mutually inconsistent with the
// reference dt values (which correspond to a 2 mm path at c = 3e8 m/s), so
// only dt is configurable and both phase readings are kept selectable.

enum class PhaseConvention { Literal, OmegaDt };

std::string to_string(PhaseConvention convention);

struct QWConfig {
  int half_width = 0;  ///< X; lattice sites 2X+1, system dimension 2(2X+1)
  int steps = 20;
  double omega0 = 7.2e12;          ///< rad/s, half the environment splitting
  double omega_carrier = 2.4166e15;  ///< rad/s, 2 pi c / lambda at 780 nm
  double n_h = 1.554;
  double n_v = 1.545;
  double dt_h = 1.036e-11;  ///< s
  double dt_v = 1.030e-11;  ///< s
  std::string boundary = "periodic";
  std::array<double, 2> env_weights{0.5, 0.5};  ///< squared amplitudes
  PhaseConvention phase_convention = PhaseConvention::Literal;

  int sites() const { return 2 * half_width + 1; }
  int system_dim() const { return 2 * sites(); }

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// The joint step unitary on lattice (x) coin (x) frequency, dimension
/// 2 * system_dim. Index order: ((site * 2 + coin) * 2 + frequency).
ComplexMatrix build_step_operator(const QWConfig& config);

/// Evolve a system state from the product initial condition
/// rho0 (x) |e><e|, |e> = sqrt(w1)|w1> + sqrt(w2)|w2>, tracing out the
/// frequency register after every step. Returns steps+1 states including
/// t = 0.
std::vector<DensityMatrix> evolve_reduced(const QWConfig& config,
                                          const DensityMatrix& rho0);

/// Measured-dynamics dataset for all N^2 preparation states, time grid
/// 0..steps in step units. Deterministic: equal configs give bit-identical
/// datasets.
DynamicsDataset generate_prepared_dataset(const QWConfig& config);

/// A single-qubit pure dephasing benchmark with a closed-form measure:
/// populations are frozen and the coherence is multiplied by
/// f(k) = cos(k * delta_phase_per_step) at step k, so the optimal
/// (equatorial, orthogonal) pair attains
/// sum_k max(0, |f(k+1)| - |f(k)|), returned alongside the dataset.
struct DephasingDataset {
  DynamicsDataset dataset;
  double analytic_value = 0.0;
};

DephasingDataset synthetic_dephasing_dataset(double delta_phase_per_step, int steps);

}  // namespace nmqw
