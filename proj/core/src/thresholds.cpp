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

#include "sparseleak/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sparseleak/spectral.hpp"

namespace sparseleak {

namespace {

constexpr double kSimpleGapTol = 1e-8;
constexpr double kSaturationTol = 1e-9;
constexpr double kSdpBoundTol = 1e-6;
constexpr double kUniquenessTol = 1e-5;

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSupportZeroTol) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

TopDirection top_direction(const Eigen::MatrixXd& a,
                           const Eigen::VectorXd& p) {
  const Eigen::Index n = a.rows();
  if (n < 2) {
    throw InputError("top_direction: need K >= 2");
  }
  if (std::abs(p.norm() - 1.0) > 1e-10) {
    throw InputError("top_direction: p must be a unit vector");
  }

  const Eigen::MatrixXd restricted = project_nullspace(a, p);
  const SymmetricEigen eig = eig_sym(restricted);

  // The eigenvector aligned with p carries the projected-out eigenvalue 0;
  // identify it by overlap rather than by value.
  Eigen::Index aligned = 0;
  double best_overlap = -1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double overlap = std::abs(eig.vectors.col(j).dot(p));
    if (overlap > best_overlap) {
      best_overlap = overlap;
      aligned = j;
    }
  }

  TopDirection top;
  Eigen::Index top_idx = -1;
  double second = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    if (j == aligned) continue;
    if (top_idx < 0) {
      top_idx = j;
    } else {
      second = eig.values(j);
      break;
    }
  }
  top.lambda_star = eig.values(top_idx);

  Eigen::VectorXd v = eig.vectors.col(top_idx);
  v -= v.dot(p) * p;  // clean residual overlap
  v /= v.norm();
  fix_sign(v);
  top.v_star = v;
  top.top_simple = !std::isfinite(second)
                       ? true
                       : (top.lambda_star - second) > kSimpleGapTol;
  return top;
}

std::pair<int, double> thresholds(const Eigen::VectorXd& v_star) {
  if (std::abs(v_star.norm() - 1.0) > 1e-10) {
    throw InputError("thresholds: v_star must be a unit vector");
  }
  int n_th = 0;
  for (Eigen::Index i = 0; i < v_star.size(); ++i) {
    if (std::abs(v_star(i)) > kSupportZeroTol) ++n_th;
  }
  const double l1 = v_star.cwiseAbs().sum();
  return {n_th, l1 * l1};
}

ThresholdReport threshold_report(const Eigen::MatrixXd& a,
                                 const Eigen::VectorXd& p) {
  const TopDirection top = top_direction(a, p);
  ThresholdReport report;
  report.lambda_star = top.lambda_star;
  report.v_star = top.v_star;
  report.top_simple = top.top_simple;
  std::tie(report.n_th, report.tau_th) = thresholds(top.v_star);
  return report;
}

TheoremVerdict verify_theorem(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& p,
                              const ThresholdReport& report,
                              const ParetoCurve& exact_curve,
                              const std::vector<SdpSolution>& sdp_sweep) {
  (void)a;
  (void)p;
  TheoremVerdict verdict;
  const double lam = report.lambda_star;

  {
    ClauseVerdict clause;
    clause.name = "saturation";
    double worst = 0.0;
    bool any = false;
    bool ordered = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (const ParetoPoint& pt : exact_curve.points) {
      if (pt.value < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
        ordered = false;
      }
      prev = pt.value;
      if (pt.n >= report.n_th) {
        any = true;
        worst = std::max(worst, std::abs(pt.value - lam));
      } else {
        // Below the threshold only the weak ceiling applies.
        worst = std::max(worst, std::max(0.0, pt.value - lam));
      }
    }
    clause.slack = worst;
    if (!any) {
      clause.status = ClauseStatus::kNotApplicable;
      clause.detail = "curve does not reach n_th";
    } else if (worst <= kSaturationTol && ordered) {
      clause.status = ClauseStatus::kPass;
    } else {
      clause.status = ClauseStatus::kFail;
      clause.detail = ordered ? "saturation deviation above 1e-9"
                              : "curve not nondecreasing";
    }
    verdict.clauses.push_back(std::move(clause));
  }

  {
    ClauseVerdict clause;
    clause.name = "sdp_tightness";
    double worst_bound = 0.0;
    double worst_tight = 0.0;
    double worst_rank = 0.0;
    bool any_tight = false;
    for (const SdpSolution& sol : sdp_sweep) {
      if (!sol.converged) continue;
      worst_bound = std::max(worst_bound, sol.objective - lam);
      if (sol.tau >= report.tau_th - 1e-12) {
        any_tight = true;
        worst_tight = std::max(worst_tight, std::abs(sol.objective - lam));
        worst_rank = std::max(worst_rank, sol.rank_gap);
      }
    }
    clause.slack = std::max({worst_bound, worst_tight, worst_rank});
    if (!any_tight) {
      clause.status = ClauseStatus::kFail;
      clause.detail = "no converged grid point at tau >= tau_th";
    } else if (worst_bound <= kSdpBoundTol && worst_tight <= kSdpBoundTol &&
               worst_rank <= kSdpBoundTol) {
      clause.status = ClauseStatus::kPass;
    } else {
      clause.status = ClauseStatus::kFail;
      clause.detail = "objective bound, tightness or rank gap above 1e-6";
    }
    verdict.clauses.push_back(std::move(clause));
  }

  {
    ClauseVerdict clause;
    clause.name = "sdp_uniqueness";
    if (!report.top_simple) {
      clause.status = ClauseStatus::kNotApplicable;
      clause.detail = "top eigenvalue on the complement of p is degenerate";
    } else {
      const Eigen::MatrixXd x_star =
          report.v_star * report.v_star.transpose();
      double worst = 0.0;
      bool any = false;
      for (const SdpSolution& sol : sdp_sweep) {
        if (!sol.converged || sol.tau < report.tau_th - 1e-12) continue;
        any = true;
        worst = std::max(worst, (sol.x - x_star).norm());
      }
      clause.slack = worst;
      if (!any) {
        clause.status = ClauseStatus::kFail;
        clause.detail = "no converged grid point at tau >= tau_th";
      } else if (worst <= kUniquenessTol) {
        clause.status = ClauseStatus::kPass;
      } else {
        clause.status = ClauseStatus::kFail;
        clause.detail = "optimizer differs from the rank-one target";
      }
    }
    verdict.clauses.push_back(std::move(clause));
  }

  verdict.all_pass = std::all_of(
      verdict.clauses.begin(), verdict.clauses.end(),
      [](const ClauseVerdict& c) { return c.status != ClauseStatus::kFail; });
  return verdict;
}

}  // namespace sparseleak
