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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nmqw {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Validation bounds for physical-state checks. Simulated data passes the
/// defaults; ingested lab data may need looser values, so every reader and
/// validator accepts a Tolerances instance.
struct Tolerances {
  double hermiticity = 1e-10;  ///< max |A - A^dagger| entry
  double trace = 1e-10;        ///< |tr(rho) - 1|
  double psd = 1e-10;          ///< allowed negative eigenvalue slack
};

/// Largest absolute entry of A - A^dagger (0 for exactly Hermitian input).
double hermiticity_error(const ComplexMatrix& a);

/// A normalized pure state: length-N complex amplitude vector.
/// Construction rejects vectors whose norm deviates from 1 by more than
/// 1e-9 and renormalizes accepted ones, so the stored norm is 1 to
/// machine precision.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  /// Basis vector |m> (0-based index m) in dimension dim.
  static PureState basis_vector(Eigen::Index m, Eigen::Index dim);

 private:
  ComplexVector amplitudes_;
};

/// A density matrix: square, Hermitian, unit trace, positive semidefinite
/// within the given tolerances. Construction validates; violations throw
/// std::invalid_argument naming the violated bound.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix, const Tolerances& tol = {});

  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// All eigenvalues of a Hermitian matrix, ascending. Rejects non-square
/// input and matrices whose hermiticity error exceeds `tol`.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h, double tol = 1e-10);

/// Reduce a joint system(x)environment state to the system. The joint index
/// is ordered system-major: joint row = sys * n_env + env. Trace preserving
/// and linear.
ComplexMatrix partial_trace_env(const ComplexMatrix& joint, Eigen::Index n_sys,
                                Eigen::Index n_env);

/// Same reduction on a validated state; the result is validated with `tol`.
DensityMatrix partial_trace_env(const DensityMatrix& joint, Eigen::Index n_sys,
                                Eigen::Index n_env, const Tolerances& tol = {});

/// Rank-1 projector |psi><psi|.
DensityMatrix pure_to_density(const PureState& psi);

/// Kronecker product a (x) b with the left factor index slowest.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace nmqw
