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

#include "sparseleak/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sparseleak/spectral.hpp"

namespace sparseleak {

namespace {

constexpr double kCollapseTol = 1e-12;
constexpr double kGapCollapseTol = 1e-6;

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSupportZeroTol) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

void check_feasible(const Eigen::VectorXd& l, const Eigen::VectorXd& p,
                    int n_budget) {
  if (std::abs(l.norm() - 1.0) > 1e-10) {
    throw SolverError("round_solution: direction is not unit norm");
  }
  if (std::abs(l.dot(p)) > 1e-10) {
    throw SolverError("round_solution: direction not orthogonal to sqrt(P_X)");
  }
  int nnz = 0;
  for (Eigen::Index i = 0; i < l.size(); ++i) {
    if (std::abs(l(i)) > kSupportZeroTol) ++nnz;
  }
  if (nnz > n_budget) {
    throw SolverError("round_solution: support exceeds the budget");
  }
}

}  // namespace

RoundedSolution round_solution(const Eigen::MatrixXd& x,
                               const Eigen::VectorXd& p, int n_budget,
                               const Eigen::MatrixXd& a, bool polish) {
  const Eigen::Index k = x.rows();
  if (n_budget < 2) {
    throw InputError("round_solution: n_budget must be >= 2");
  }

  const SymmetricEigen eig = eig_sym(x);
  if (eig.values(k - 1) <= kCollapseTol) {
    // A numerically zero matrix has no leading direction to extract.
    throw RoundingCollapsed();
  }
  Eigen::VectorXd v = eig.vectors.col(k - 1);  // top eigenvector
  v -= v.dot(p) * p;

  // Hard-threshold to the n_budget largest magnitudes, ties to lower index.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) {
                     return std::abs(v(i)) > std::abs(v(j));
                   });
  std::vector<Eigen::Index> kept(
      order.begin(), order.begin() + std::min<Eigen::Index>(n_budget, k));
  std::sort(kept.begin(), kept.end());

  Eigen::VectorXd l = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i : kept) l(i) = v(i);

  // Re-projection restricted to the surviving support.
  double pl = 0.0, pp = 0.0;
  for (Eigen::Index i : kept) {
    pl += p(i) * l(i);
    pp += p(i) * p(i);
  }
  if (pp > 0.0) {
    for (Eigen::Index i : kept) l(i) -= (pl / pp) * p(i);
  }

  const double norm = l.norm();
  if (norm < kCollapseTol) {
    throw RoundingCollapsed();
  }
  l /= norm;
  fix_sign(l);

  if (polish) {
    std::vector<int> support;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (std::abs(l(i)) > kSupportZeroTol) {
        support.push_back(static_cast<int>(i));
      }
    }
    if (support.size() >= 2) {
      l = restricted_rayleigh(a, p, support).second;
    }
  }

  check_feasible(l, p, n_budget);

  RoundedSolution out;
  out.l_hat = l;
  out.value = l.dot(a * l);
  out.n_budget = n_budget;
  return out;
}

std::vector<RoundedSolution> round_sweep(const std::vector<SdpSolution>& sweep,
                                         const Eigen::VectorXd& p,
                                         int n_budget, const Eigen::MatrixXd& a,
                                         bool polish) {
  std::vector<RoundedSolution> out;
  out.reserve(sweep.size());
  for (const SdpSolution& sol : sweep) {
    if (!sol.converged) continue;
    try {
      RoundedSolution rounded = round_solution(sol.x, p, n_budget, a, polish);
      rounded.source_tau = sol.tau;
      out.push_back(std::move(rounded));
    } catch (const RoundingCollapsed&) {
      // Degenerate point; the envelope reduction handles the fallback.
    }
  }
  return out;
}

RoundedSolution best_rounded(const std::vector<SdpSolution>& sweep,
                             const Eigen::VectorXd& p, int n_budget,
                             const Eigen::MatrixXd& a, bool polish) {
  if (n_budget < 2) {
    throw InputError("sdp_envelope: n_budget must be >= 2");
  }
  const bool any_converged =
      std::any_of(sweep.begin(), sweep.end(),
                  [](const SdpSolution& s) { return s.converged; });
  if (!any_converged) {
    throw SolverError("sdp_envelope: no grid point converged");
  }

  const std::vector<RoundedSolution> rounded =
      round_sweep(sweep, p, n_budget, a, polish);
  if (rounded.empty()) {
    // Every rounding collapsed; fall back to the best 2-sparse direction.
    const SparseSolution fallback = solve_exact(a, p, 2);
    RoundedSolution out;
    out.l_hat = fallback.l;
    out.value = fallback.value;
    out.source_tau = std::numeric_limits<double>::quiet_NaN();
    out.n_budget = n_budget;
    return out;
  }

  // Grid order is ascending in tau, so strict improvement keeps the
  // smallest tau among ties.
  const RoundedSolution* best = &rounded.front();
  for (const RoundedSolution& cand : rounded) {
    if (cand.value > best->value) best = &cand;
  }
  return *best;
}

RoundedSolution sdp_envelope(const Eigen::MatrixXd& a,
                             const Eigen::VectorXd& p, int n_budget,
                             const std::vector<double>& grid,
                             const SolverOptions& opts, bool polish) {
  if (n_budget < 2) {
    throw InputError("sdp_envelope: n_budget must be >= 2");
  }
  const std::vector<SdpSolution> sweep = sweep_tau(a, p, grid, opts);
  return best_rounded(sweep, p, n_budget, a, polish);
}

GapReport pareto_gap(const ParetoCurve& exact_curve,
                     const std::vector<RoundedSolution>& envelopes) {
  GapReport report;
  std::size_t env_idx = 0;
  for (const ParetoPoint& pt : exact_curve.points) {
    GapRow row;
    row.n = pt.n;
    row.u_opt = pt.value;
    if (pt.n == 1) {
      row.u_rounded = 0.0;  // the only feasible 1-sparse direction is zero
    } else {
      if (env_idx >= envelopes.size() ||
          envelopes[env_idx].n_budget != pt.n) {
        throw InputError("pareto_gap: envelope budgets do not match the curve");
      }
      row.u_rounded = envelopes[env_idx].value;
      ++env_idx;
    }
    row.delta = row.u_opt - row.u_rounded;
    report.rows.push_back(row);
  }
  if (env_idx != envelopes.size()) {
    throw InputError("pareto_gap: envelope budgets do not match the curve");
  }

  int first_n = report.rows.empty() ? 1 : report.rows.front().n;
  int n_th_emp = first_n;
  for (const GapRow& row : report.rows) {
    if (row.delta > kGapCollapseTol) n_th_emp = row.n + 1;
  }
  report.n_th_emp = n_th_emp;
  return report;
}

}  // namespace sparseleak
