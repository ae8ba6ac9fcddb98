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

#include <map>
#include <string>
#include <vector>

#include "nmqw/qmath.hpp"

namespace nmqw {

// The N^2 operator basis spanning the space of N x N Hermitian matrices:
//
//   diag(m):  |m><m|
//   x(m,n):   (|m><n| + |n><m|) / 2          m > n
//   y(m,n):   i(|m><n| - |n><m|) / 2         m > n
//
// Indices are 0-based internally; anything user-facing (file formats, error
// messages, the preparation checklist) is 1-based.

enum class LabelKind { Diag, X, Y };

struct BasisLabel {
  LabelKind kind = LabelKind::Diag;
  int m = 0;
  int n = 0;  // == m for Diag

  auto operator<=>(const BasisLabel&) const = default;

  static BasisLabel diag(int m) { return {LabelKind::Diag, m, m}; }
  static BasisLabel x(int m, int n) { return {LabelKind::X, m, n}; }
  static BasisLabel y(int m, int n) { return {LabelKind::Y, m, n}; }

  /// 1-based rendering, e.g. "diag(3)", "x(3,1)".
  std::string str() const;
};

// A preparation identifier has the same shape as a basis label:
//   diag(m):  |m>
//   x(m,n):   (|m> + |n>)/sqrt(2)            m > n
//   y(m,n):   (|m> + i|n>)/sqrt(2)           m > n
using PreparedId = BasisLabel;

/// Expansion coefficients of a density matrix over the operator basis.
/// a0 holds the N diagonal weights; ax/ay are strictly lower triangular
/// (row m, column n, m > n). For a density matrix sum(a0) == 1.
struct CoefficientVector {
  Eigen::VectorXd a0;
  Eigen::MatrixXd ax;
  Eigen::MatrixXd ay;

  int dim() const { return static_cast<int>(a0.size()); }
};

/// A time-indexed family of matrices per label: either the measured dynamics
/// of the N^2 prepared states ("prepared") or the recovered dynamics of the
/// N^2 basis operators ("basis").
struct DynamicsDataset {
  enum class Flavor { Prepared, Basis };

  Flavor flavor = Flavor::Prepared;
  int dim = 0;
  std::vector<double> times;  // strictly increasing
  std::map<BasisLabel, std::vector<ComplexMatrix>> series;
  std::map<std::string, std::string> metadata;

  int num_times() const { return static_cast<int>(times.size()); }

  /// Structural and physical invariants for the flavor; throws
  /// std::invalid_argument naming the offending series/time/bound.
  void validate(const Tolerances& tol = {}) const;
};

/// The N^2 basis operators in a fixed deterministic order: all diag(m),
/// then x(m,n), y(m,n) pairs for m > n (m outer, n inner). Requires N >= 2.
std::vector<std::pair<BasisLabel, ComplexMatrix>> basis_operators(int dim);

/// The N^2 preparation states in the same label order. Requires N >= 2.
std::vector<std::pair<PreparedId, PureState>> prepared_states(int dim);

/// Linear inversion of the three measurement relations, per time slice:
///
///   rho0_m(t)    = S_diag(m)(t)
///   rhox_mn(t)   = S_x(m,n)(t) - (rho0_m(t) + rho0_n(t)) / 2
///   rhoy_mn(t)   = (rho0_m(t) + rho0_n(t)) / 2 - S_y(m,n)(t)
///
/// where S_id is the measured dynamics of the prepared state `id`. Requires
/// all N^2 prepared series on a common time grid; reports every missing
/// label at once.
DynamicsDataset recover_basis_dynamics(const DynamicsDataset& prepared);

/// Expansion of a density matrix over the operator basis:
/// a0_m = rho_mm, ax_mn = 2 Re rho_mn, ay_mn = 2 Im rho_mn (m > n).
CoefficientVector decompose(const DensityMatrix& rho);

struct ReconstructOptions {
  Tolerances tolerances{1e-9, 1e-9, 1e-9};
  /// Clip negative eigenvalues to zero and renormalize the trace instead of
  /// rejecting. Off by default: reconstruction never silently alters ideal
  /// data, but noisy lab data can need it.
  bool project_psd = false;
};

/// rho(t_k) = sum_m a0_m rho0_m(t_k) + sum_{m>n} ax_mn rhox_mn(t_k)
///          + sum_{m>n} ay_mn rhoy_mn(t_k), validated per time slice.
std::vector<DensityMatrix> reconstruct_dynamics(const CoefficientVector& coeffs,
                                                const DynamicsDataset& basis,
                                                const ReconstructOptions& opts = {});

/// The basis dataset flattened into one real matrix pair per time so that
/// evolving an arbitrary Hermitian operator is two dgemv calls. This is the
/// hot path shared by the optimizer and the scanner; reconstruct_dynamics is
/// the validated front end over the same arithmetic.
class LinearDynamics {
 public:
  explicit LinearDynamics(const DynamicsDataset& basis);

  int dim() const { return dim_; }
  int num_times() const { return static_cast<int>(real_parts_.size()); }
  const std::vector<double>& times() const { return times_; }

  /// Flat expansion coefficients of a Hermitian matrix, in basis order.
  Eigen::VectorXd coefficients(const ComplexMatrix& hermitian) const;

  /// Evolved operator at time index k for flat coefficients c.
  ComplexMatrix evolve(const Eigen::VectorXd& c, int k) const;

 private:
  int dim_ = 0;
  std::vector<double> times_;
  // per time: N^2 x N^2 real matrices; column j holds vec(Re B_j) / vec(Im B_j)
  std::vector<Eigen::MatrixXd> real_parts_;
  std::vector<Eigen::MatrixXd> imag_parts_;
};

/// Flat vector <-> structured coefficients, both in basis_operators order.
Eigen::VectorXd flatten_coefficients(const CoefficientVector& coeffs);
CoefficientVector unflatten_coefficients(const Eigen::VectorXd& flat, int dim);

}  // namespace nmqw
