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

#include "nmqw/optim.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace nmqw {

SearchResult maximize_simplex(const Objective& f, const Eigen::VectorXd& x0,
                              const SearchOptions& opts) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> verts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 0; i < n; ++i) verts[i + 1][i] += opts.initial_step;
  for (int i = 0; i <= n; ++i) vals[i] = f(verts[i]);

  std::vector<int> order(n + 1);
  std::iota(order.begin(), order.end(), 0);
  const auto sort_desc = [&] {
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] > vals[b]; });
  };

  SearchResult res;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    sort_desc();
    const int best = order[0], worst = order[n], second_worst = order[n - 1];
    if (vals[best] - vals[worst] < opts.tolerance) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += verts[i];
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - verts[worst]);
    const double f_ref = f(reflected);
    if (f_ref > vals[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - verts[worst]);
      const double f_exp = f(expanded);
      if (f_exp > f_ref) {
        verts[worst] = expanded;
        vals[worst] = f_exp;
      } else {
        verts[worst] = reflected;
        vals[worst] = f_ref;
      }
    } else if (f_ref > vals[second_worst]) {
      verts[worst] = reflected;
      vals[worst] = f_ref;
    } else {
      const Eigen::VectorXd contracted = centroid + 0.5 * (verts[worst] - centroid);
      const double f_con = f(contracted);
      if (f_con > vals[worst]) {
        verts[worst] = contracted;
        vals[worst] = f_con;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          verts[i] = verts[best] + 0.5 * (verts[i] - verts[best]);
          vals[i] = f(verts[i]);
        }
      }
    }
  }

  sort_desc();
  res.x = verts[order[0]];
  res.value = vals[order[0]];
  res.iterations = iter;
  return res;
}

SearchResult maximize_gradient(const Objective& f, const Eigen::VectorXd& x0,
                               const SearchOptions& opts) {
  const int n = static_cast<int>(x0.size());
  const double fd_step = 1e-5;

  Eigen::VectorXd x = x0;
  double fx = f(x);
  double step = opts.initial_step;

  SearchResult res;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    Eigen::VectorXd grad(n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += fd_step;
      xm[i] -= fd_step;
      grad[i] = (f(xp) - f(xm)) / (2.0 * fd_step);
    }
    const double gnorm = grad.norm();
    if (gnorm < 1e-12) {
      res.converged = true;
      break;
    }
    // line search along the ascent direction, halving until an improvement
    double gained = 0.0;
    while (step > 1e-14) {
      const Eigen::VectorXd trial = x + step * grad / gnorm;
      const double ft = f(trial);
      if (ft > fx) {
        gained = ft - fx;
        x = trial;
        fx = ft;
        step *= 1.5;
        break;
      }
      step *= 0.5;
    }
    if (gained == 0.0 || (gained < opts.tolerance && step < 1e-7)) {
      res.converged = true;
      break;
    }
  }

  res.x = x;
  res.value = fx;
  res.iterations = iter;
  return res;
}

}  // namespace nmqw
