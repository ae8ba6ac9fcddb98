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

#include "nmqw/blp.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nmqw/optim.hpp"

namespace nmqw {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument(what); }

/// 0.5 * sum |eig| for a Hermitian difference matrix; closed form for 2x2.
/// The sign of the input is canonicalized first so that swapping the two
/// states feeds the solver the bit-identical matrix (exact symmetry).
double half_abs_eigenvalue_sum(const ComplexMatrix& delta) {
  if (delta.rows() == 2) {
    const double a = delta(0, 0).real();
    const double d = delta(1, 1).real();
    const double s = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(delta(1, 0)));
    return 0.5 * (std::abs(s + r) + std::abs(s - r));
  }
  double orientation = 0.0;
  for (Eigen::Index i = 0; i < delta.rows() && orientation == 0.0; ++i)
    for (Eigen::Index j = 0; j < delta.cols() && orientation == 0.0; ++j) {
      if (delta(i, j).real() != 0.0)
        orientation = delta(i, j).real();
      else if (delta(i, j).imag() != 0.0)
        orientation = delta(i, j).imag();
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      orientation < 0.0 ? ComplexMatrix(-delta) : delta, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

ComplexVector complex_from_interleaved(const Eigen::VectorXd& raw) {
  ComplexVector v(raw.size() / 2);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    v[i] = std::complex<double>(raw[2 * i], raw[2 * i + 1]);
  return v;
}

Eigen::VectorXd interleave(const ComplexVector& v) {
  Eigen::VectorXd raw(2 * v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    raw[2 * i] = v[i].real();
    raw[2 * i + 1] = v[i].imag();
  }
  return raw;
}

constexpr double kDegenerateNorm = 1e-12;

/// Maps raw parameters to the two density matrices; nullopt when the
/// parametrization is degenerate (vanishing norm, or psi2 parallel to psi1
/// beyond recovery in the orthogonal mode).
std::optional<std::pair<ComplexMatrix, ComplexMatrix>> pair_to_densities(
    const PairParams& params, int dim) {
  if (params.mode == PairMode::GeneralDensity) {
    ComplexMatrix rhos[2];
    const Eigen::VectorXd* raws[2] = {&params.raw1, &params.raw2};
    for (int s = 0; s < 2; ++s) {
      const ComplexVector entries = complex_from_interleaved(*raws[s]);
      Eigen::Map<const ComplexMatrix> g(entries.data(), dim, dim);
      ComplexMatrix gram = g * g.adjoint();
      const double tr = gram.trace().real();
      if (tr < kDegenerateNorm) return std::nullopt;
      rhos[s] = gram / tr;
    }
    return std::make_pair(std::move(rhos[0]), std::move(rhos[1]));
  }

  ComplexVector psi1 = complex_from_interleaved(params.raw1);
  ComplexVector psi2 = complex_from_interleaved(params.raw2);
  const double n1 = psi1.norm();
  if (n1 < kDegenerateNorm) return std::nullopt;
  psi1 /= n1;
  if (params.mode == PairMode::OrthogonalPure)
    psi2 -= psi1.dot(psi2) * psi1;
  const double n2 = psi2.norm();
  if (n2 < kDegenerateNorm) return std::nullopt;
  psi2 /= n2;
  return std::make_pair(ComplexMatrix(psi1 * psi1.adjoint()),
                        ComplexMatrix(psi2 * psi2.adjoint()));
}

Eigen::Index raw_length(PairMode mode, int dim) {
  return mode == PairMode::GeneralDensity ? 2 * static_cast<Eigen::Index>(dim) * dim
                                          : 2 * static_cast<Eigen::Index>(dim);
}

/// Shared evaluation core: raw pair -> two reconstructed trajectories ->
/// pointwise trace distance -> positive-increment sum.
class PairEvaluator {
 public:
  explicit PairEvaluator(const DynamicsDataset& basis) : dyn_(basis) {}

  int dim() const { return dyn_.dim(); }
  const std::vector<double>& times() const { return dyn_.times(); }
  const LinearDynamics& dynamics() const { return dyn_; }

  DistanceTrajectory trajectory(const ComplexMatrix& rho1, const ComplexMatrix& rho2) const {
    const Eigen::VectorXd c1 = dyn_.coefficients(rho1);
    const Eigen::VectorXd c2 = dyn_.coefficients(rho2);
    DistanceTrajectory traj;
    traj.times = dyn_.times();
    traj.values.resize(dyn_.num_times());
    for (int k = 0; k < dyn_.num_times(); ++k)
      traj.values[k] = half_abs_eigenvalue_sum(dyn_.evolve(c1, k) - dyn_.evolve(c2, k));
    return traj;
  }

  /// Objective value; -1 marks a degenerate parametrization (strictly below
  /// any feasible value, which is >= 0).
  double operator()(const PairParams& params) const {
    const auto pair = pair_to_densities(params, dim());
    if (!pair) return -1.0;
    return blp_functional(trajectory(pair->first, pair->second));
  }

 private:
  LinearDynamics dyn_;
};

struct RestartOutcome {
  bool used = false;
  bool converged = false;
  bool abandoned = false;
  int iterations = 0;
  double value = -1.0;
  Eigen::VectorXd x;
};

}  // namespace

std::string to_string(PairMode mode) {
  switch (mode) {
    case PairMode::OrthogonalPure: return "orthogonal-pure";
    case PairMode::FreePure: return "free-pure";
    case PairMode::GeneralDensity: return "general-density";
  }
  return "orthogonal-pure";
}

std::optional<PairMode> pair_mode_from_string(const std::string& name) {
  if (name == "orthogonal-pure") return PairMode::OrthogonalPure;
  if (name == "free-pure") return PairMode::FreePure;
  if (name == "general-density") return PairMode::GeneralDensity;
  return std::nullopt;
}

std::string to_string(SearchMethod method) {
  return method == SearchMethod::Simplex ? "simplex" : "gradient";
}

std::optional<SearchMethod> search_method_from_string(const std::string& name) {
  if (name == "simplex") return SearchMethod::Simplex;
  if (name == "gradient") return SearchMethod::Gradient;
  return std::nullopt;
}

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim())
    fail("trace_distance: dimension mismatch (" + std::to_string(rho1.dim()) + " vs " +
         std::to_string(rho2.dim()) + ")");
  return half_abs_eigenvalue_sum(rho1.matrix() - rho2.matrix());
}

DistanceTrajectory distance_trajectory(const std::vector<DensityMatrix>& dyn1,
                                       const std::vector<DensityMatrix>& dyn2,
                                       const std::vector<double>& times) {
  if (dyn1.size() != dyn2.size() || dyn1.size() != times.size())
    fail("distance_trajectory: length mismatch (" + std::to_string(dyn1.size()) + ", " +
         std::to_string(dyn2.size()) + ", " + std::to_string(times.size()) + ")");
  DistanceTrajectory traj;
  traj.times = times;
  traj.values.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k)
    traj.values.push_back(trace_distance(dyn1[k], dyn2[k]));
  return traj;
}

double blp_functional(const DistanceTrajectory& traj) {
  if (traj.values.size() < 2)
    fail("blp_functional: need at least 2 samples, got " +
         std::to_string(traj.values.size()));
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < traj.values.size(); ++k) {
    const double inc = traj.values[k + 1] - traj.values[k];
    if (inc > 0.0) total += inc;
  }
  return total;
}

BLPResult optimize_pair(const DynamicsDataset& basis, const OptimizerOptions& opts) {
  if (opts.restarts < 1) fail("optimize_pair: restarts must be >= 1");
  if (opts.max_iterations < 1) fail("optimize_pair: iteration cap must be >= 1");

  const PairEvaluator eval(basis);
  const int dim = eval.dim();
  const Eigen::Index rlen = raw_length(opts.mode, dim);

  const auto objective = [&](const Eigen::VectorXd& x) {
    PairParams p;
    p.mode = opts.mode;
    p.raw1 = x.head(rlen);
    p.raw2 = x.tail(rlen);
    return eval(p);
  };

  SearchOptions search;
  search.max_iterations = opts.max_iterations;
  search.tolerance = opts.tolerance;

  // Independent deterministic restarts; workers pull indices so the outcome
  // is identical for any thread count.
  std::vector<RestartOutcome> outcomes(opts.restarts);
  std::atomic<int> next{0};
  std::exception_ptr worker_error;
  std::mutex error_mutex;

  const auto run_restart = [&](int r) {
    SplitMix64 rng = SplitMix64::substream(opts.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd x0(2 * rlen);
    bool feasible = false;
    for (int attempt = 0; attempt < 2 && !feasible; ++attempt) {
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0[i] = rng.uniform(-1.0, 1.0);
      feasible = objective(x0) >= 0.0;
    }
    RestartOutcome& out = outcomes[r];
    out.used = true;
    if (!feasible) {
      out.abandoned = true;
      return;
    }
    const SearchResult res = opts.method == SearchMethod::Simplex
                                 ? maximize_simplex(objective, x0, search)
                                 : maximize_gradient(objective, x0, search);
    out.converged = res.converged;
    out.iterations = res.iterations;
    out.value = res.value;
    out.x = res.x;
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const int n_threads =
      std::max(1, std::min(opts.restarts,
                           opts.threads > 0 ? opts.threads : static_cast<int>(hw ? hw : 1)));
  if (n_threads == 1) {
    for (int r = 0; r < opts.restarts; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < opts.restarts; r = next.fetch_add(1)) {
          try {
            run_restart(r);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!worker_error) worker_error = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    if (worker_error) std::rethrow_exception(worker_error);
  }

  OptimizerDiagnostics diag;
  diag.restarts = opts.restarts;
  diag.seed = opts.seed;
  diag.mode = to_string(opts.mode);
  diag.method = to_string(opts.method);
  diag.max_iterations = opts.max_iterations;
  diag.tolerance = opts.tolerance;

  // reduction in index order: strictly-greater wins, ties keep the earlier
  // restart
  int best_restart = -1;
  for (int r = 0; r < opts.restarts; ++r) {
    const RestartOutcome& out = outcomes[r];
    diag.total_iterations += out.iterations;
    if (out.abandoned) ++diag.abandoned_restarts;
    if (out.converged) ++diag.converged_restarts;
    if (!out.abandoned && (best_restart < 0 || out.value > outcomes[best_restart].value))
      best_restart = r;
  }
  if (best_restart < 0) fail("optimize_pair: every restart was degenerate");
  diag.best_restart = best_restart;

  // sanity floor: the objective over every distinct pairing of the N^2
  // prepared states, from cached per-state reconstructions
  const auto prepared = prepared_states(dim);
  const LinearDynamics& dyn = eval.dynamics();
  std::vector<std::vector<ComplexMatrix>> floor_states(prepared.size());
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    const ComplexVector& a = prepared[i].second.amplitudes();
    const Eigen::VectorXd c = dyn.coefficients(a * a.adjoint());
    floor_states[i].reserve(dyn.num_times());
    for (int k = 0; k < dyn.num_times(); ++k) floor_states[i].push_back(dyn.evolve(c, k));
  }
  double floor_value = 0.0;
  std::size_t floor_i = 0, floor_j = 1;
  for (std::size_t i = 0; i < prepared.size(); ++i)
    for (std::size_t j = i + 1; j < prepared.size(); ++j) {
      DistanceTrajectory traj;
      traj.times = dyn.times();
      traj.values.resize(dyn.num_times());
      for (int k = 0; k < dyn.num_times(); ++k)
        traj.values[k] = half_abs_eigenvalue_sum(floor_states[i][k] - floor_states[j][k]);
      const double v = blp_functional(traj);
      if (v > floor_value) {
        floor_value = v;
        floor_i = i;
        floor_j = j;
      }
    }
  diag.floor_value = floor_value;

  BLPResult result;
  result.diagnostics = diag;
  if (outcomes[best_restart].value >= floor_value) {
    result.pair.mode = opts.mode;
    result.pair.raw1 = outcomes[best_restart].x.head(rlen);
    result.pair.raw2 = outcomes[best_restart].x.tail(rlen);
  } else {
    // a prepared pairing beat every restart; report it faithfully
    result.pair.mode = PairMode::FreePure;
    result.pair.raw1 = interleave(prepared[floor_i].second.amplitudes());
    result.pair.raw2 = interleave(prepared[floor_j].second.amplitudes());
  }
  const auto densities = pair_to_densities(result.pair, dim);
  if (!densities) fail("optimize_pair: internal error: winning pair is degenerate");
  result.rho1 = densities->first;
  result.rho2 = densities->second;
  result.trajectory = eval.trajectory(result.rho1, result.rho2);
  result.value = blp_functional(result.trajectory);
  return result;
}

BLPResult grid_scan_qubit(const DynamicsDataset& basis, int n_theta, int n_phi) {
  if (basis.dim != 2)
    fail("grid_scan_qubit: requires dimension 2, got " + std::to_string(basis.dim));
  if (n_theta < 2 || n_phi < 1) fail("grid_scan_qubit: grid must be at least 2 x 1");

  const PairEvaluator eval(basis);
  const double pi = std::acos(-1.0);

  double best = -1.0;
  double best_theta = 0.0, best_phi = 0.0;
  long evals = 0;
  // n_theta counts polar intervals: both poles are sampled and, for even
  // n_theta, so is the equator (where pure-dephasing optima sit exactly)
  for (int it = 0; it <= n_theta; ++it) {
    const double theta = pi * it / n_theta;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * pi * ip / n_phi;
      const std::complex<double> phase(std::cos(phi), std::sin(phi));
      ComplexVector psi1(2), psi2(2);
      psi1 << std::cos(theta / 2), phase * std::sin(theta / 2);
      psi2 << -std::conj(phase) * std::sin(theta / 2), std::cos(theta / 2);
      PairParams p;
      p.mode = PairMode::OrthogonalPure;
      p.raw1 = interleave(psi1);
      p.raw2 = interleave(psi2);
      const double v = eval(p);
      ++evals;
      if (v > best) {
        best = v;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }

  const std::complex<double> phase(std::cos(best_phi), std::sin(best_phi));
  ComplexVector psi1(2), psi2(2);
  psi1 << std::cos(best_theta / 2), phase * std::sin(best_theta / 2);
  psi2 << -std::conj(phase) * std::sin(best_theta / 2), std::cos(best_theta / 2);

  BLPResult result;
  result.pair.mode = PairMode::OrthogonalPure;
  result.pair.raw1 = interleave(psi1);
  result.pair.raw2 = interleave(psi2);
  result.rho1 = psi1 * psi1.adjoint();
  result.rho2 = psi2 * psi2.adjoint();
  result.trajectory = eval.trajectory(result.rho1, result.rho2);
  result.value = blp_functional(result.trajectory);
  result.diagnostics.mode = to_string(PairMode::OrthogonalPure);
  result.diagnostics.method = "grid-scan";
  result.diagnostics.total_iterations = evals;
  return result;
}

}  // namespace nmqw
