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

// Seeded generators and independent numeric oracles shared by the test
// suites. The oracles deliberately avoid the code paths they check.

#include <complex>
#include <random>
#include <vector>

#include "nmqw/qmath.hpp"
#include "nmqw/tomography.hpp"

namespace nmqw::testing {

inline ComplexMatrix random_ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(g(rng), g(rng));
  return m;
}

inline DensityMatrix random_density(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(n, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline PureState random_pure(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v[i] = std::complex<double>(g(rng), g(rng));
  return PureState(v / v.norm());
}

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(n, rng);
  return 0.5 * (g + g.adjoint());
}

inline ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

/// Monic characteristic polynomial coefficients by Faddeev-LeVerrier:
/// p(z) = z^n + c[1] z^{n-1} + ... + c[n].
inline std::vector<std::complex<double>> characteristic_polynomial(const ComplexMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<std::complex<double>> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m + c[k - 1] * ComplexMatrix::Identity(n, n);
    c[k] = -(a * m).trace() / static_cast<double>(k);
  }
  return c;
}

/// Durand-Kerner simultaneous root iteration on a monic polynomial.
inline std::vector<std::complex<double>> polynomial_roots(
    const std::vector<std::complex<double>>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  const auto eval = [&](std::complex<double> z) {
    std::complex<double> p = coeffs[0];
    for (int k = 1; k <= n; ++k) p = p * z + coeffs[k];
    return p;
  };
  std::vector<std::complex<double>> roots(n);
  const std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    roots[i] = acc;
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      const std::complex<double> delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14) break;
  }
  return roots;
}

/// Partial trace by brute enumeration of all four joint indices.
inline ComplexMatrix naive_partial_trace(const ComplexMatrix& joint, int n_sys, int n_env) {
  ComplexMatrix out = ComplexMatrix::Zero(n_sys, n_sys);
  for (int i = 0; i < n_sys; ++i)
    for (int e = 0; e < n_env; ++e)
      for (int j = 0; j < n_sys; ++j)
        for (int f = 0; f < n_env; ++f)
          if (e == f) out(i, j) += joint(i * n_env + e, j * n_env + f);
  return out;
}

/// Random Kraus channel (trace preserving by construction) via a Haar
/// unitary on system (x) ancilla.
struct KrausChannel {
  std::vector<ComplexMatrix> kraus;

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const ComplexMatrix& k : kraus) out += k * rho * k.adjoint();
    return out;
  }
};

inline KrausChannel random_channel(int dim, int n_kraus, std::mt19937_64& rng) {
  const ComplexMatrix u = random_unitary(dim * n_kraus, rng);
  KrausChannel ch;
  // columns of the isometry V = U (I (x) |0>): block rows are Kraus operators
  for (int k = 0; k < n_kraus; ++k) {
    ComplexMatrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) a(r, c) = u(r * n_kraus + k, c * n_kraus + 0);
    ch.kraus.push_back(std::move(a));
  }
  return ch;
}

/// Prepared-flavor dataset from an arbitrary linear map applied per time:
/// series(id)(k) = step^k applied to the prepared projector.
template <typename Channel>
DynamicsDataset dataset_from_channel(int dim, int n_steps, const Channel& step) {
  DynamicsDataset ds;
  ds.flavor = DynamicsDataset::Flavor::Prepared;
  ds.dim = dim;
  for (int k = 0; k <= n_steps; ++k) ds.times.push_back(static_cast<double>(k));
  for (const auto& [id, state] : prepared_states(dim)) {
    ComplexMatrix rho = pure_to_density(state).matrix();
    std::vector<ComplexMatrix> mats;
    mats.push_back(rho);
    for (int k = 0; k < n_steps; ++k) {
      rho = step(rho);
      mats.push_back(rho);
    }
    ds.series.emplace(id, std::move(mats));
  }
  ds.metadata["time_unit"] = "step";
  return ds;
}

}  // namespace nmqw::testing
