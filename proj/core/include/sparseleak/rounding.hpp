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

#ifndef SPARSELEAK_ROUNDING_HPP_
#define SPARSELEAK_ROUNDING_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"
#include "sparseleak/exact.hpp"
#include "sparseleak/sdp.hpp"

namespace sparseleak {

// Feasible sparse direction recovered from a lifted solution, with its
// quadratic value and the tau of the solve it came from.
struct RoundedSolution {
  Eigen::VectorXd l_hat;
  double value = 0.0;
  double source_tau = 0.0;
  int n_budget = 0;
};

struct GapRow {
  int n = 0;
  double u_opt = 0.0;
  double u_rounded = 0.0;
  double delta = 0.0;
};

// Per-budget comparison of the exact optimum and the rounded envelope.
// n_th_emp is the smallest N such that delta(M) <= 1e-6 for every M >= N
// (the gap stays collapsed from there on); one past the largest N when the
// gap never collapses.
struct GapReport {
  std::vector<GapRow> rows;
  int n_th_emp = 0;
};

// Rounds a lifted matrix to a feasible direction: top eigenvector, projection
// off sqrt(P_X), hard-thresholding to the n_budget largest-magnitude entries
// (ties to the lower index), re-projection off sqrt(P_X) restricted to the
// surviving support, normalization.  With polish set, the direction is then
// replaced by the restricted Rayleigh maximizer on its support (a weak
// improvement that stays feasible).  Feasibility of the result is checked,
// not assumed.  Throws RoundingCollapsed when the direction degenerates
// (e.g. x = 0).
RoundedSolution round_solution(const Eigen::MatrixXd& x,
                               const Eigen::VectorXd& p, int n_budget,
                               const Eigen::MatrixXd& a, bool polish = false);

// Rounds every converged point of an existing sweep (skipping collapsed
// ones); entries keep the grid order.
std::vector<RoundedSolution> round_sweep(const std::vector<SdpSolution>& sweep,
                                         const Eigen::VectorXd& p,
                                         int n_budget, const Eigen::MatrixXd& a,
                                         bool polish = false);

// Best rounded value over a sweep, ties to the smaller tau.  Falls back to
// the best 2-sparse exact direction when every rounding collapses.  Throws
// SolverError when no grid point converged.
RoundedSolution best_rounded(const std::vector<SdpSolution>& sweep,
                             const Eigen::VectorXd& p, int n_budget,
                             const Eigen::MatrixXd& a, bool polish = false);

// Runs its own sweep over the grid, then reduces as best_rounded.
RoundedSolution sdp_envelope(const Eigen::MatrixXd& a,
                             const Eigen::VectorXd& p, int n_budget,
                             const std::vector<double>& grid,
                             const SolverOptions& opts = {},
                             bool polish = false);

// Joins an exact curve with per-budget envelopes (one per curve point with
// N >= 2; the N = 1 row pairs with the zero direction).  Budgets must match.
GapReport pareto_gap(const ParetoCurve& exact_curve,
                     const std::vector<RoundedSolution>& envelopes);

}  // namespace sparseleak

#endif  // SPARSELEAK_ROUNDING_HPP_
