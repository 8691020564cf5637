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

#ifndef SPARSELEAK_EXACT_HPP_
#define SPARSELEAK_EXACT_HPP_

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"

namespace sparseleak {

// A leakage direction: unit vector orthogonal to sqrt(P_X), supported on at
// most n_budget coordinates, with its quadratic utility value l^T A l.
// The zero direction (value 0, empty support) stands in when no nonzero
// feasible direction exists.
struct SparseSolution {
  Eigen::VectorXd l;
  std::vector<int> support;  // sorted
  double value = 0.0;
  int n_budget = 0;
};

struct ParetoPoint {
  int n = 0;
  double value = 0.0;
};

// Exact optimal value per sparsity budget N = 1..n_max, together with the
// unconstrained ceiling lambda_star (top Rayleigh value orthogonal to
// sqrt(P_X)).  Values are the raw quadratic forms; any epsilon scaling is
// applied at export time.
struct ParetoCurve {
  std::vector<ParetoPoint> points;
  double lambda_star = 0.0;
};

// Maximum of v^T A v over unit vectors supported on s and orthogonal to p.
// For |s| = 1 the only such vector is zero, so the result is (0, zero).
// Otherwise the support is reduced through the orthonormal complement basis
// of p restricted to s and the top eigenpair of the reduced matrix is
// embedded back into R^K (unit norm, deterministic sign).
std::pair<double, Eigen::VectorXd> restricted_rayleigh(
    const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
    const std::vector<int>& s);

// Exact solution by enumerating all supports of size exactly min(n_budget, K)
// (feasible sets are nested under support inclusion, so smaller supports are
// redundant).  Ties resolve to the lexicographically smallest support.
// Refuses with InputError when C(K, n_budget) exceeds 1e7.
SparseSolution solve_exact(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                           int n_budget);

// Curve of solve_exact values for N = 1..n_max.  A decrease between
// consecutive budgets is an internal error and throws, never gets patched.
ParetoCurve pareto_exact(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                         int n_max);

}  // namespace sparseleak

#endif  // SPARSELEAK_EXACT_HPP_
