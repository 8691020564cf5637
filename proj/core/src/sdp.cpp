// Copyright 2026 The sparseleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparseleak/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sparseleak/spectral.hpp"

namespace sparseleak {

namespace {

constexpr int kPenaltyAdaptPeriod = 50;
constexpr double kPenaltyAdaptRatio = 10.0;
constexpr double kPenaltyAdaptFactor = 2.0;

struct ConsensusState {
  Eigen::MatrixXd z;
  Eigen::MatrixXd u1, u2, u3;  // scaled duals, one per constraint block
  double rho = 1.0;
};

void validate_options(const SolverOptions& opts) {
  if (opts.max_iterations <= 0 || !(opts.tolerance > 0.0) ||
      !(opts.penalty > 0.0)) {
    throw InputError("solver options must be positive");
  }
}

SdpSolution solve_with_state(const Eigen::MatrixXd& a,
                             const Eigen::VectorXd& p, double tau,
                             const SolverOptions& opts,
                             ConsensusState& state) {
  const Eigen::Index n = a.rows();
  // The drift direction is normalized so that residual tolerances act on a
  // unit-scale problem; the reported objective uses the original a.
  const SymmetricEigen a_eig = eig_sym(a);
  const double scale = std::max(1.0, a_eig.values(n - 1));
  const Eigen::MatrixXd drift = a / scale;

  double rho = state.rho;
  Eigen::MatrixXd z = state.z;
  Eigen::MatrixXd u1 = state.u1, u2 = state.u2, u3 = state.u3;

  SdpSolution sol;
  sol.tau = tau;
  int it = 0;
  double residual = std::numeric_limits<double>::infinity();
  for (it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::MatrixXd x1 = project_spectahedron(z - u1);
    const Eigen::MatrixXd x2 = project_l1_ball(z - u2, tau);
    const Eigen::MatrixXd x3 = project_nullspace(z - u3, p);

    const Eigen::MatrixXd z_next =
        ((x1 + x2 + x3) + (u1 + u2 + u3)) / 3.0 + drift / (3.0 * rho);

    const double r = std::max({(x1 - z_next).norm(), (x2 - z_next).norm(),
                               (x3 - z_next).norm()});
    const double s = rho * std::sqrt(3.0) * (z_next - z).norm();

    u1 += x1 - z_next;
    u2 += x2 - z_next;
    u3 += x3 - z_next;
    z = z_next;

    residual = std::max(r, s);
    if (residual <= opts.tolerance) {
      sol.converged = true;
      break;
    }
    if (opts.adaptive_penalty && it % kPenaltyAdaptPeriod == 0) {
      if (r > kPenaltyAdaptRatio * s) {
        rho *= kPenaltyAdaptFactor;
        u1 /= kPenaltyAdaptFactor;
        u2 /= kPenaltyAdaptFactor;
        u3 /= kPenaltyAdaptFactor;
      } else if (s > kPenaltyAdaptRatio * r) {
        rho /= kPenaltyAdaptFactor;
        u1 *= kPenaltyAdaptFactor;
        u2 *= kPenaltyAdaptFactor;
        u3 *= kPenaltyAdaptFactor;
      }
    }
  }
  sol.iterations = std::min(it, opts.max_iterations);

  state.z = z;
  state.u1 = u1;
  state.u2 = u2;
  state.u3 = u3;
  state.rho = rho;

  // Report the spectahedron-projected iterate: exactly PSD with tr <= 1, so
  // only the nullspace and l1 violations remain to measure.
  sol.x = project_spectahedron(z - u1);
  sol.objective = (a.array() * sol.x.array()).sum();
  const double null_violation = (sol.x * p).cwiseAbs().maxCoeff();
  const double l1_violation =
      std::max(0.0, sol.x.cwiseAbs().sum() - tau) / std::max(1.0, tau);
  sol.primal_residual = std::max(null_violation, l1_violation);

  const SymmetricEigen x_eig = eig_sym(sol.x);
  const double top = x_eig.values(n - 1);
  const double second = n > 1 ? std::max(0.0, x_eig.values(n - 2)) : 0.0;
  sol.rank_gap = top > 1e-14 ? second / top : 0.0;
  return sol;
}

}  // namespace

SdpSolution solve_sdp(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                      double tau, const SolverOptions& opts) {
  if (!(tau > 0.0)) {
    throw InputError("solve_sdp: tau must be positive");
  }
  validate_options(opts);
  const Eigen::Index n = a.rows();
  ConsensusState state;
  state.z = Eigen::MatrixXd::Zero(n, n);
  state.u1 = state.u2 = state.u3 = Eigen::MatrixXd::Zero(n, n);
  state.rho = opts.penalty;
  return solve_with_state(a, p, tau, opts, state);
}

std::vector<SdpSolution> sweep_tau(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& grid,
                                   const SolverOptions& opts) {
  if (grid.empty()) {
    throw InputError("sweep_tau: empty grid");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && grid[i] < grid[i - 1])) {
      throw InputError("sweep_tau: grid must be positive and ascending");
    }
  }
  validate_options(opts);

  const Eigen::Index n = a.rows();
  ConsensusState state;
  state.z = Eigen::MatrixXd::Zero(n, n);
  state.u1 = state.u2 = state.u3 = Eigen::MatrixXd::Zero(n, n);
  state.rho = opts.penalty;

  std::vector<SdpSolution> out;
  out.reserve(grid.size());
  for (double tau : grid) {
    if (!opts.warm_start) {
      state.z.setZero();
      state.u1.setZero();
      state.u2.setZero();
      state.u3.setZero();
      state.rho = opts.penalty;
    }
    out.push_back(solve_with_state(a, p, tau, opts, state));
  }
  return out;
}

bool dual_bound_check(const SdpSolution& sol, double lambda_star) {
  if (!sol.converged) {
    throw InputError("dual_bound_check: solution did not converge");
  }
  return sol.objective <= lambda_star + 1e-6;
}

std::vector<double> linear_tau_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || hi < lo || count < 1) {
    throw InputError("linear_tau_grid: need 0 < lo <= hi and count >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

}  // namespace sparseleak
