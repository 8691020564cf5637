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

#ifndef SPARSELEAK_SDP_HPP_
#define SPARSELEAK_SDP_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"

namespace sparseleak {

struct SolverOptions {
  int max_iterations = 20000;
  double tolerance = 1e-7;  // combined primal/dual consensus residual
  double penalty = 1.0;     // initial ADMM penalty
  bool adaptive_penalty = true;  // residual balancing, factor 2 every 50 iters
  bool warm_start = true;        // reuse state across a tau sweep
};

// Solution of the lifted relaxation
//   max <A, X>  s.t.  X >= 0, tr(X) <= 1, X sqrt(P_X) = 0, ||X||_1 <= tau.
// x is exactly positive semidefinite with tr(x) <= 1 (it is a spectahedron
// projection); primal_residual is the worst remaining violation of the other
// two constraints.  rank_gap is the ratio of the second to the largest
// eigenvalue of x.
struct SdpSolution {
  Eigen::MatrixXd x;
  double objective = 0.0;
  double tau = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double rank_gap = 0.0;
  bool converged = false;
};

// Three-block consensus splitting (alternating projections with scaled dual
// updates) over the spectahedron, the entrywise l1 ball, and the nullspace of
// sqrt(P_X); the linear objective enters the consensus average as a constant
// drift.  Deterministic for fixed inputs and options.  Non-convergence is
// reported through the converged flag, never thrown.
SdpSolution solve_sdp(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                      double tau, const SolverOptions& opts = {});

// One solve per grid point (grid must be ascending and positive), warm-started
// from the previous point when opts.warm_start is set.  Non-converged points
// are kept in the output with their flag; the sweep continues past them.
std::vector<SdpSolution> sweep_tau(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& p,
                                   const std::vector<double>& grid,
                                   const SolverOptions& opts = {});

// True iff the converged objective respects the spectral ceiling
// (objective <= lambda_star + 1e-6).
bool dual_bound_check(const SdpSolution& sol, double lambda_star);

// Helper for "lin:LO:HI:COUNT" grid specs.
std::vector<double> linear_tau_grid(double lo, double hi, int count);

}  // namespace sparseleak

#endif  // SPARSELEAK_SDP_HPP_
