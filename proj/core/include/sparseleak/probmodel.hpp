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

#ifndef SPARSELEAK_PROBMODEL_HPP_
#define SPARSELEAK_PROBMODEL_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"

namespace sparseleak {

// Validated joint distribution of (X, Y) on alphabets of equal size K, with
// cached marginals and the column-stochastic conditional P_{X|Y}.
// Construction enforces: entries >= 0 summing to 1 (1e-12), strictly positive
// marginals, column sums of P_{X|Y} equal to 1 (1e-10), and an invertible
// P_{X|Y} (reciprocal condition estimate >= 1e-8).
struct JointDistribution {
  int k = 0;
  Eigen::MatrixXd p_xy;         // entry (x, y) = P_XY(x, y)
  Eigen::VectorXd p_x;          // row sums
  Eigen::VectorXd p_y;          // column sums
  Eigen::MatrixXd p_x_given_y;  // entry (x, y) = P_XY(x, y) / P_Y(y)
  std::uint64_t seed = 0;       // generator seed, 0 when not generated
  std::string label;            // optional metadata
};

// W = diag(1/sqrt(P_Y)) P_{X|Y}^{-1} diag(sqrt(P_X)) and its Gram matrix
// A = W^T W (symmetrized), spectrally decomposed.  W maps sqrt(P_X) to
// sqrt(P_Y), so A fixes sqrt(P_X) and its smallest eigenvalue is 1.
struct LeakageOperator {
  Eigen::MatrixXd w;
  Eigen::MatrixXd a;
  Eigen::VectorXd sigma_sq;  // eigenvalues of a, ascending
  Eigen::MatrixXd v;         // orthonormal eigenvectors of a, columns
  Eigen::VectorXd p;         // sqrt(P_X)
};

struct ConstraintReport {
  int l0 = 0;
  double chi_sq = 0.0;
  bool l0_ok = false;
  bool chi_ok = false;
};

// Marginals (row sums, column sums) of a nonnegative matrix; no validation.
std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(
    const Eigen::MatrixXd& p_xy);

// Validating constructor.  Throws InputError naming the offending index and
// value for each violated invariant.
JointDistribution make_joint(int k, const Eigen::MatrixXd& p_xy,
                             std::uint64_t seed = 0,
                             const std::string& label = {});

// Reads the JSON instance format {"k": <int>, "p_xy": [[K x K floats]]} with
// optional "seed" and "label" metadata.
JointDistribution load_joint(std::istream& source);
JointDistribution load_joint_file(const std::string& path);

// Serializes an instance back to the JSON format (metadata preserved).
std::string to_instance_json(const JointDistribution& dist);

// Deterministic random instance: K*K uniform weights from a seeded mt19937_64
// stream, normalized, redrawn until validation passes with the generation
// floors (marginals >= 1e-3/K, reciprocal condition >= 1e-6).  Throws
// InputError after 1000 rejected draws.
JointDistribution random_instance(int k, std::uint64_t seed);

LeakageOperator build_operator(const JointDistribution& dist);

// Point-wise constraint evaluation for a conditional P_{X|U=u}: the l0 count
// of cond - P_X (zero threshold kSupportZeroTol), the chi-squared value
// sum_x (cond(x)-P_X(x))^2 / P_X(x), and the verdicts against (n_budget,
// eps^2).  cond must be a probability vector.
ConstraintReport verify_pointwise_constraints(const JointDistribution& dist,
                                              const Eigen::VectorXd& cond,
                                              int n_budget, double eps);

}  // namespace sparseleak

#endif  // SPARSELEAK_PROBMODEL_HPP_
