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

#ifndef SPARSELEAK_MECHANISM_HPP_
#define SPARSELEAK_MECHANISM_HPP_

#include <array>
#include <string>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"
#include "sparseleak/probmodel.hpp"

namespace sparseleak {

// Binary disclosure channel built from a leakage direction l:
//   P_U = (1/2, 1/2),
//   P_{X|U=u} = P_X +- epsilon [sqrt(P_X)] l   (columns of p_x_given_u),
//   P_{Y|U=u} = P_{X|Y}^{-1} P_{X|U=u},
//   P_{U|Y}(u|y) = P_U(u) P_{Y|U=u}(y) / P_Y(y).
// The two perturbations mirror each other exactly, so the P_U-mixture of the
// conditionals reproduces P_X entrywise.
struct Mechanism {
  Eigen::Vector2d p_u;
  Eigen::MatrixXd p_x_given_u;  // K x 2
  Eigen::MatrixXd p_y_given_u;  // K x 2
  Eigen::MatrixXd p_u_given_y;  // 2 x K
  double epsilon = 0.0;
  Eigen::VectorXd direction;
};

struct OutputLeakage {
  int l0 = 0;
  double chi_sq = 0.0;
  bool l0_ok = false;
  bool chi_ok = false;
};

struct LeakageReport {
  std::array<OutputLeakage, 2> per_output;
  // |chi^2 - eps^2 ||l||^2|, worst output; the two agree identically.
  double identity_residual = 0.0;
};

// Largest epsilon keeping every entry of P_X +- eps [sqrt(P_X)] l and of
// P_{X|Y}^{-1}(P_X +- eps [sqrt(P_X)] l) inside [0, 1], in closed form from
// the entrywise linear constraints.  +infinity for l = 0.
double max_epsilon(const Eigen::VectorXd& l, const JointDistribution& dist);

// Requires 0 <= epsilon <= 0.9 * max_epsilon (the safety factor keeps the
// probabilities strictly interior, so the exact utility never evaluates
// log 0).  epsilon = 0 produces the independent channel.
Mechanism build_mechanism(const Eigen::VectorXd& l,
                          const JointDistribution& dist, double epsilon);

// I(U;Y) in nats, with 0 log 0 = 0.
double utility_exact(const Mechanism& mech, const JointDistribution& dist);

// Quadratic proxy 0.5 epsilon^2 ||W l||^2.
double approx_utility(const Eigen::VectorXd& l, const LeakageOperator& w_op,
                      double epsilon);

// Per-output point-wise constraint verdicts against (n_budget, eps^2).
LeakageReport leakage_report(const Mechanism& mech, int n_budget, double eps);

// {"p_u": [...], "p_u_given_y": [[...]], "epsilon": ..., "direction": [...]}
// plus any instance metadata (seed, label).
std::string to_mechanism_json(const Mechanism& mech,
                              const JointDistribution& dist);

}  // namespace sparseleak

#endif  // SPARSELEAK_MECHANISM_HPP_
