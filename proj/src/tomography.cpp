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

#include "nmqw/tomography.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nmqw {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

void require_dim(int dim) {
  if (dim < 2) fail("operator basis requires dimension >= 2, got " + std::to_string(dim));
}

/// Deterministic label order used everywhere: diag(0..N-1), then for each
/// m > n the pair x(m,n), y(m,n) with m outer, n inner.
std::vector<BasisLabel> label_order(int dim) {
  std::vector<BasisLabel> labels;
  labels.reserve(static_cast<std::size_t>(dim) * dim);
  for (int m = 0; m < dim; ++m) labels.push_back(BasisLabel::diag(m));
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < m; ++n) {
      labels.push_back(BasisLabel::x(m, n));
      labels.push_back(BasisLabel::y(m, n));
    }
  return labels;
}

ComplexMatrix basis_matrix(const BasisLabel& label, int dim) {
  ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
  switch (label.kind) {
    case LabelKind::Diag:
      b(label.m, label.m) = 1.0;
      break;
    case LabelKind::X:
      b(label.m, label.n) = 0.5;
      b(label.n, label.m) = 0.5;
      break;
    case LabelKind::Y:
      b(label.m, label.n) = std::complex<double>(0.0, 0.5);
      b(label.n, label.m) = std::complex<double>(0.0, -0.5);
      break;
  }
  return b;
}

}  // namespace

std::string BasisLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case LabelKind::Diag: os << "diag(" << m + 1 << ")"; break;
    case LabelKind::X: os << "x(" << m + 1 << "," << n + 1 << ")"; break;
    case LabelKind::Y: os << "y(" << m + 1 << "," << n + 1 << ")"; break;
  }
  return os.str();
}

std::vector<std::pair<BasisLabel, ComplexMatrix>> basis_operators(int dim) {
  require_dim(dim);
  std::vector<std::pair<BasisLabel, ComplexMatrix>> ops;
  for (const BasisLabel& label : label_order(dim))
    ops.emplace_back(label, basis_matrix(label, dim));
  return ops;
}

std::vector<std::pair<PreparedId, PureState>> prepared_states(int dim) {
  require_dim(dim);
  const std::complex<double> i_unit(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<std::pair<PreparedId, PureState>> states;
  for (const BasisLabel& label : label_order(dim)) {
    ComplexVector v = ComplexVector::Zero(dim);
    switch (label.kind) {
      case LabelKind::Diag:
        v[label.m] = 1.0;
        break;
      case LabelKind::X:
        v[label.m] = inv_sqrt2;
        v[label.n] = inv_sqrt2;
        break;
      case LabelKind::Y:
        v[label.m] = inv_sqrt2;
        v[label.n] = i_unit * inv_sqrt2;
        break;
    }
    states.emplace_back(label, PureState(std::move(v)));
  }
  return states;
}

void DynamicsDataset::validate(const Tolerances& tol) const {
  if (dim < 2) fail("dataset: dimension must be >= 2, got " + std::to_string(dim));
  if (times.size() < 1) fail("dataset: empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1]))
      fail("dataset: time grid not strictly increasing at index " + std::to_string(k));

  // completeness (all N^2 labels present) is a precondition of recovery and
  // reconstruction, which report the missing labels; a partial dataset is
  // still a structurally valid document
  for (const auto& [label, mats] : series) {
    if (label.m < 0 || label.m >= dim || label.n < 0 || label.n >= dim)
      fail("dataset: label " + label.str() + " out of range for dimension " +
           std::to_string(dim));
    if (label.kind != LabelKind::Diag && !(label.m > label.n))
      fail("dataset: label " + label.str() + " violates the m > n ordering rule");
    if (mats.size() != times.size())
      fail("dataset: series " + label.str() + " has " + std::to_string(mats.size()) +
           " matrices for " + std::to_string(times.size()) + " times");
    for (std::size_t k = 0; k < mats.size(); ++k) {
      const ComplexMatrix& m = mats[k];
      if (m.rows() != dim || m.cols() != dim)
        fail("dataset: series " + label.str() + " time index " + std::to_string(k) +
             ": matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
      const auto where = [&] {
        return "dataset: series " + label.str() + " time index " + std::to_string(k);
      };
      if (flavor == Flavor::Prepared) {
        try {
          DensityMatrix probe(m, tol);
        } catch (const std::invalid_argument& e) {
          fail(where() + ": " + e.what());
        }
      } else {
        const double herm = hermiticity_error(m);
        if (herm > tol.hermiticity) {
          std::ostringstream os;
          os << where() << ": hermiticity error " << herm << " exceeds bound "
             << tol.hermiticity;
          fail(os.str());
        }
        // channel trace preservation: diag series keep trace 1, x/y keep 0
        const double want = label.kind == LabelKind::Diag ? 1.0 : 0.0;
        const double got = m.trace().real();
        if (std::abs(got - want) > 1e-9 || std::abs(m.trace().imag()) > 1e-9) {
          std::ostringstream os;
          os << where() << ": trace " << got << " deviates from " << want
             << " beyond bound 1e-09";
          fail(os.str());
        }
      }
    }
  }
}

DynamicsDataset recover_basis_dynamics(const DynamicsDataset& prepared) {
  if (prepared.flavor != DynamicsDataset::Flavor::Prepared)
    fail("recover_basis_dynamics: input dataset is not prepared-flavor");

  // report absent labels before the structural count check can fire
  const int dim = prepared.dim;
  std::vector<BasisLabel> missing;
  for (const BasisLabel& label : label_order(dim))
    if (prepared.series.find(label) == prepared.series.end()) missing.push_back(label);
  if (!missing.empty()) {
    std::ostringstream os;
    os << "recover_basis_dynamics: missing prepared series:";
    for (const BasisLabel& label : missing) os << " " << label.str();
    fail(os.str());
  }
  prepared.validate();

  DynamicsDataset basis;
  basis.flavor = DynamicsDataset::Flavor::Basis;
  basis.dim = dim;
  basis.times = prepared.times;
  basis.metadata = prepared.metadata;
  basis.metadata["recovered_from"] = "prepared";

  const int nt = prepared.num_times();
  for (const BasisLabel& label : label_order(dim)) {
    const auto& measured = prepared.series.at(label);
    std::vector<ComplexMatrix> out(measured.size());
    if (label.kind == LabelKind::Diag) {
      out = measured;
    } else {
      const auto& diag_m = prepared.series.at(BasisLabel::diag(label.m));
      const auto& diag_n = prepared.series.at(BasisLabel::diag(label.n));
      for (int k = 0; k < nt; ++k) {
        const ComplexMatrix mean = 0.5 * (diag_m[k] + diag_n[k]);
        out[k] = label.kind == LabelKind::X ? ComplexMatrix(measured[k] - mean)
                                            : ComplexMatrix(mean - measured[k]);
      }
    }
    basis.series.emplace(label, std::move(out));
  }
  return basis;
}

CoefficientVector decompose(const DensityMatrix& rho) {
  const int dim = static_cast<int>(rho.dim());
  require_dim(dim);
  const ComplexMatrix& m = rho.matrix();
  CoefficientVector c;
  c.a0 = Eigen::VectorXd::Zero(dim);
  c.ax = Eigen::MatrixXd::Zero(dim, dim);
  c.ay = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) c.a0[i] = m(i, i).real();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) {
      c.ax(i, j) = 2.0 * m(i, j).real();
      c.ay(i, j) = 2.0 * m(i, j).imag();
    }
  return c;
}

Eigen::VectorXd flatten_coefficients(const CoefficientVector& coeffs) {
  const int dim = coeffs.dim();
  Eigen::VectorXd flat(dim * dim);
  int idx = 0;
  for (int m = 0; m < dim; ++m) flat[idx++] = coeffs.a0[m];
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < m; ++n) {
      flat[idx++] = coeffs.ax(m, n);
      flat[idx++] = coeffs.ay(m, n);
    }
  return flat;
}

CoefficientVector unflatten_coefficients(const Eigen::VectorXd& flat, int dim) {
  if (flat.size() != static_cast<Eigen::Index>(dim) * dim)
    fail("coefficient vector has length " + std::to_string(flat.size()) +
         ", expected " + std::to_string(dim * dim));
  CoefficientVector c;
  c.a0 = Eigen::VectorXd::Zero(dim);
  c.ax = Eigen::MatrixXd::Zero(dim, dim);
  c.ay = Eigen::MatrixXd::Zero(dim, dim);
  int idx = 0;
  for (int m = 0; m < dim; ++m) c.a0[m] = flat[idx++];
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < m; ++n) {
      c.ax(m, n) = flat[idx++];
      c.ay(m, n) = flat[idx++];
    }
  return c;
}

LinearDynamics::LinearDynamics(const DynamicsDataset& basis) {
  if (basis.flavor != DynamicsDataset::Flavor::Basis)
    fail("LinearDynamics: dataset is not basis-flavor");
  std::vector<BasisLabel> missing;
  for (const BasisLabel& label : label_order(basis.dim))
    if (basis.series.find(label) == basis.series.end()) missing.push_back(label);
  if (!missing.empty()) {
    std::ostringstream os;
    os << "basis dataset is incomplete; missing series:";
    for (const BasisLabel& label : missing) os << " " << label.str();
    fail(os.str());
  }
  basis.validate();
  dim_ = basis.dim;
  times_ = basis.times;

  const int nsq = dim_ * dim_;
  const auto labels = label_order(dim_);
  const int nt = basis.num_times();
  real_parts_.assign(nt, Eigen::MatrixXd(nsq, nsq));
  imag_parts_.assign(nt, Eigen::MatrixXd(nsq, nsq));
  for (int j = 0; j < nsq; ++j) {
    const auto& mats = basis.series.at(labels[j]);
    for (int k = 0; k < nt; ++k) {
      for (int r = 0; r < dim_; ++r)
        for (int col = 0; col < dim_; ++col) {
          real_parts_[k](r * dim_ + col, j) = mats[k](r, col).real();
          imag_parts_[k](r * dim_ + col, j) = mats[k](r, col).imag();
        }
    }
  }
}

Eigen::VectorXd LinearDynamics::coefficients(const ComplexMatrix& hermitian) const {
  if (hermitian.rows() != dim_ || hermitian.cols() != dim_)
    fail("LinearDynamics: operator dimension mismatch");
  Eigen::VectorXd flat(dim_ * dim_);
  int idx = 0;
  for (int m = 0; m < dim_; ++m) flat[idx++] = hermitian(m, m).real();
  for (int m = 0; m < dim_; ++m)
    for (int n = 0; n < m; ++n) {
      flat[idx++] = 2.0 * hermitian(m, n).real();
      flat[idx++] = 2.0 * hermitian(m, n).imag();
    }
  return flat;
}

ComplexMatrix LinearDynamics::evolve(const Eigen::VectorXd& c, int k) const {
  const Eigen::VectorXd re = real_parts_[k] * c;
  const Eigen::VectorXd im = imag_parts_[k] * c;
  ComplexMatrix out(dim_, dim_);
  for (int r = 0; r < dim_; ++r)
    for (int col = 0; col < dim_; ++col)
      out(r, col) = std::complex<double>(re[r * dim_ + col], im[r * dim_ + col]);
  return out;
}

std::vector<DensityMatrix> reconstruct_dynamics(const CoefficientVector& coeffs,
                                                const DynamicsDataset& basis,
                                                const ReconstructOptions& opts) {
  if (coeffs.dim() != basis.dim)
    fail("reconstruct_dynamics: coefficient dimension " + std::to_string(coeffs.dim()) +
         " does not match dataset dimension " + std::to_string(basis.dim));
  LinearDynamics dyn(basis);
  const Eigen::VectorXd flat = flatten_coefficients(coeffs);

  std::vector<DensityMatrix> out;
  out.reserve(dyn.num_times());
  for (int k = 0; k < dyn.num_times(); ++k) {
    ComplexMatrix rho = dyn.evolve(flat, k);
    if (opts.project_psd) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (rho + rho.adjoint()));
      Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
      lam /= lam.sum();
      rho = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    }
    try {
      out.emplace_back(std::move(rho), opts.tolerances);
    } catch (const std::invalid_argument& e) {
      fail("reconstruct_dynamics: time index " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nmqw
