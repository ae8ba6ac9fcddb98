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

#include "nmqw/qmath.hpp"

#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace nmqw {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

std::string bound_message(const std::string& quantity, double measured, double bound) {
  std::ostringstream os;
  os.precision(6);
  os << quantity << " = " << measured << " exceeds bound " << bound;
  return os.str();
}

}  // namespace

double hermiticity_error(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

PureState::PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) fail("pure state: amplitude vector is empty");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-9)
    fail("pure state: " + bound_message("|norm - 1|", std::abs(norm - 1.0), 1e-9));
  amplitudes_ /= norm;
}

PureState PureState::basis_vector(Eigen::Index m, Eigen::Index dim) {
  if (m < 0 || m >= dim) fail("pure state: basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v[m] = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, const Tolerances& tol)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    fail("density matrix: not square (" + std::to_string(matrix_.rows()) + "x" +
         std::to_string(matrix_.cols()) + ")");
  const double herm = hermiticity_error(matrix_);
  if (herm > tol.hermiticity)
    fail("density matrix: " + bound_message("hermiticity error max|rho - rho^dagger|", herm,
                                            tol.hermiticity));
  const double tr_dev = std::abs(matrix_.trace() - std::complex<double>(1.0, 0.0));
  if (tr_dev > tol.trace)
    fail("density matrix: " + bound_message("|trace - 1|", tr_dev, tol.trace));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(matrix_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol.psd)
    fail("density matrix: " + bound_message("negative eigenvalue", -min_eig, tol.psd));
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols())
    fail("hermitian_eigenvalues: not square (" + std::to_string(h.rows()) + "x" +
         std::to_string(h.cols()) + ")");
  const double herm = hermiticity_error(h);
  if (herm > tol)
    fail("hermitian_eigenvalues: " + bound_message("hermiticity error", herm, tol));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

ComplexMatrix partial_trace_env(const ComplexMatrix& joint, Eigen::Index n_sys,
                                Eigen::Index n_env) {
  if (n_sys < 1 || n_env < 1 || joint.rows() != joint.cols() ||
      joint.rows() != n_sys * n_env) {
    std::ostringstream os;
    os << "partial_trace_env: joint dimension " << joint.rows() << "x" << joint.cols()
       << " does not factor as " << n_sys << " x " << n_env;
    fail(os.str());
  }
  ComplexMatrix reduced = ComplexMatrix::Zero(n_sys, n_sys);
  for (Eigen::Index i = 0; i < n_sys; ++i)
    for (Eigen::Index j = 0; j < n_sys; ++j)
      for (Eigen::Index e = 0; e < n_env; ++e)
        reduced(i, j) += joint(i * n_env + e, j * n_env + e);
  return reduced;
}

DensityMatrix partial_trace_env(const DensityMatrix& joint, Eigen::Index n_sys,
                                Eigen::Index n_env, const Tolerances& tol) {
  return DensityMatrix(partial_trace_env(joint.matrix(), n_sys, n_env), tol);
}

DensityMatrix pure_to_density(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

}  // namespace nmqw
