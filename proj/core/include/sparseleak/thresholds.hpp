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

#ifndef SPARSELEAK_THRESHOLDS_HPP_
#define SPARSELEAK_THRESHOLDS_HPP_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparseleak/common.hpp"
#include "sparseleak/exact.hpp"
#include "sparseleak/sdp.hpp"

namespace sparseleak {

// Spectral ceiling and saturation thresholds of an instance:
//   lambda_star = max of v^T A v over unit v orthogonal to p,
//   v_star      = the maximizer (deterministic sign convention),
//   n_th        = ||v_star||_0,   tau_th = ||v_star||_1^2.
// top_simple says whether the top eigenvalue on the complement of p is simple
// (spectral gap > 1e-8); when it is not, v_star is the convention-selected
// representative of the eigenspace and the thresholds describe it alone.
struct ThresholdReport {
  double lambda_star = 0.0;
  Eigen::VectorXd v_star;
  int n_th = 0;
  double tau_th = 0.0;
  bool top_simple = false;
};

struct TopDirection {
  double lambda_star = 0.0;
  Eigen::VectorXd v_star;
  bool top_simple = false;
};

enum class ClauseStatus { kPass, kFail, kNotApplicable };

struct ClauseVerdict {
  std::string name;
  ClauseStatus status = ClauseStatus::kNotApplicable;
  double slack = 0.0;  // measured worst-case deviation
  std::string detail;
};

struct TheoremVerdict {
  std::vector<ClauseVerdict> clauses;
  bool all_pass = false;  // no clause failed (not-applicable is fine)
};

// Top eigenpair of Pi A Pi (Pi = I - p p^T) after discarding the eigenvector
// aligned with p.
TopDirection top_direction(const Eigen::MatrixXd& a, const Eigen::VectorXd& p);

// (n_th, tau_th) of a unit direction: support count above kSupportZeroTol and
// the squared entrywise l1 norm.
std::pair<int, double> thresholds(const Eigen::VectorXd& v_star);

ThresholdReport threshold_report(const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& p);

// Checks the three saturation/tightness clauses on concrete solver outputs:
//  (i)   exact values equal lambda_star for every N >= n_th (1e-9);
//  (ii)  every converged SDP objective is <= lambda_star + 1e-6, with
//        equality and rank_gap <= 1e-6 for tau >= tau_th;
//  (iii) when top_simple, the SDP optimizer at tau >= tau_th matches
//        v_star v_star^T within 1e-5 Frobenius (otherwise not applicable).
// Returns verdicts with measured slack; never throws on a failed clause.
TheoremVerdict verify_theorem(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& p,
                              const ThresholdReport& report,
                              const ParetoCurve& exact_curve,
                              const std::vector<SdpSolution>& sdp_sweep);

}  // namespace sparseleak

#endif  // SPARSELEAK_THRESHOLDS_HPP_
