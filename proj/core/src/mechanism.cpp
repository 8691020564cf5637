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

#include "sparseleak/mechanism.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <nlohmann/json.hpp>

namespace sparseleak {

namespace {

constexpr double kEpsilonSafety = 0.9;

void check_direction(const Eigen::VectorXd& l, const JointDistribution& dist) {
  if (l.size() != dist.k) {
    throw InputError("direction has size " + std::to_string(l.size()) +
                     ", expected " + std::to_string(dist.k));
  }
  const Eigen::VectorXd sqrt_px = dist.p_x.cwiseSqrt();
  if (std::abs(l.dot(sqrt_px)) > 1e-8) {
    throw InputError("direction is not orthogonal to sqrt(P_X)");
  }
  if (l.norm() > 1.0 + 1e-8) {
    throw InputError("direction has norm above 1");
  }
}

// Entrywise bound for base + eps*delta and base - eps*delta to stay in [0,1].
double entry_bound(const Eigen::VectorXd& base, const Eigen::VectorXd& delta) {
  double bound = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    const double d = std::abs(delta(i));
    if (d == 0.0) continue;
    bound = std::min(bound, base(i) / d);
    bound = std::min(bound, (1.0 - base(i)) / d);
  }
  return bound;
}

}  // namespace

double max_epsilon(const Eigen::VectorXd& l, const JointDistribution& dist) {
  check_direction(l, dist);
  if (l.cwiseAbs().maxCoeff() <= kSupportZeroTol) {
    return std::numeric_limits<double>::infinity();
  }
  const Eigen::VectorXd d = dist.p_x.cwiseSqrt().cwiseProduct(l);
  const Eigen::VectorXd g =
      Eigen::PartialPivLU<Eigen::MatrixXd>(dist.p_x_given_y).solve(d);
  return std::min(entry_bound(dist.p_x, d), entry_bound(dist.p_y, g));
}

Mechanism build_mechanism(const Eigen::VectorXd& l,
                          const JointDistribution& dist, double epsilon) {
  check_direction(l, dist);
  if (epsilon < 0.0) {
    throw InputError("epsilon must be nonnegative");
  }
  const double eps_max = max_epsilon(l, dist);
  const double safe = kEpsilonSafety * eps_max;
  if (epsilon > safe * (1.0 + 1e-12)) {
    throw InputError("epsilon " + std::to_string(epsilon) +
                     " exceeds the safe bound 0.9 * eps_max = " +
                     std::to_string(safe));
  }

  const int k = dist.k;
  const Eigen::VectorXd d = dist.p_x.cwiseSqrt().cwiseProduct(l);
  const Eigen::VectorXd g =
      Eigen::PartialPivLU<Eigen::MatrixXd>(dist.p_x_given_y).solve(d);

  Mechanism mech;
  mech.p_u = Eigen::Vector2d(0.5, 0.5);
  mech.epsilon = epsilon;
  mech.direction = l;
  mech.p_x_given_u.resize(k, 2);
  mech.p_x_given_u.col(0) = dist.p_x + epsilon * d;
  mech.p_x_given_u.col(1) = dist.p_x - epsilon * d;
  mech.p_y_given_u.resize(k, 2);
  mech.p_y_given_u.col(0) = dist.p_y + epsilon * g;
  mech.p_y_given_u.col(1) = dist.p_y - epsilon * g;

  for (int u = 0; u < 2; ++u) {
    for (int i = 0; i < k; ++i) {
      if (mech.p_x_given_u(i, u) < -1e-12 || mech.p_y_given_u(i, u) < -1e-12) {
        throw SolverError(
            "build_mechanism: negative probability after the linear solve "
            "(leakage matrix too ill-conditioned)");
      }
    }
  }
  for (int u = 0; u < 2; ++u) {
    const double sx = mech.p_x_given_u.col(u).sum();
    const double sy = mech.p_y_given_u.col(u).sum();
    if (std::abs(sx - 1.0) > 1e-10 || std::abs(sy - 1.0) > 1e-10) {
      throw SolverError("build_mechanism: conditional does not sum to 1");
    }
    const double markov =
        (dist.p_x_given_y * mech.p_y_given_u.col(u) - mech.p_x_given_u.col(u))
            .cwiseAbs()
            .maxCoeff();
    if (markov > 1e-9) {
      throw SolverError("build_mechanism: Markov reconstruction residual " +
                        std::to_string(markov));
    }
  }

  mech.p_u_given_y.resize(2, k);
  for (int y = 0; y < k; ++y) {
    for (int u = 0; u < 2; ++u) {
      mech.p_u_given_y(u, y) =
          mech.p_u(u) * mech.p_y_given_u(y, u) / dist.p_y(y);
    }
  }
  return mech;
}

double utility_exact(const Mechanism& mech, const JointDistribution& dist) {
  double info = 0.0;
  for (int u = 0; u < 2; ++u) {
    for (int y = 0; y < dist.k; ++y) {
      const double q = mech.p_y_given_u(y, u);
      if (q <= 0.0) continue;  // 0 log 0 = 0
      info += mech.p_u(u) * q * std::log(q / dist.p_y(y));
    }
  }
  return info;
}

double approx_utility(const Eigen::VectorXd& l, const LeakageOperator& w_op,
                      double epsilon) {
  return 0.5 * epsilon * epsilon * (w_op.w * l).squaredNorm();
}

LeakageReport leakage_report(const Mechanism& mech, int n_budget, double eps) {
  // The mixture of the two conditionals reproduces P_X exactly.
  const Eigen::VectorXd p_x =
      0.5 * (mech.p_x_given_u.col(0) + mech.p_x_given_u.col(1));
  const double target =
      mech.epsilon * mech.epsilon * mech.direction.squaredNorm();

  LeakageReport report;
  for (int u = 0; u < 2; ++u) {
    OutputLeakage& out = report.per_output[static_cast<std::size_t>(u)];
    double chi = 0.0;
    for (Eigen::Index i = 0; i < p_x.size(); ++i) {
      const double diff = mech.p_x_given_u(i, u) - p_x(i);
      if (std::abs(diff) > kSupportZeroTol) ++out.l0;
      chi += diff * diff / p_x(i);
    }
    out.chi_sq = chi;
    out.l0_ok = out.l0 <= n_budget;
    out.chi_ok = chi <= eps * eps + 1e-12 * std::max(1.0, eps * eps);
    report.identity_residual =
        std::max(report.identity_residual, std::abs(chi - target));
  }
  return report;
}

std::string to_mechanism_json(const Mechanism& mech,
                              const JointDistribution& dist) {
  nlohmann::json doc;
  doc["p_u"] = {mech.p_u(0), mech.p_u(1)};
  nlohmann::json rows = nlohmann::json::array();
  for (int u = 0; u < 2; ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < dist.k; ++y) row.push_back(mech.p_u_given_y(u, y));
    rows.push_back(std::move(row));
  }
  doc["p_u_given_y"] = std::move(rows);
  doc["epsilon"] = mech.epsilon;
  nlohmann::json direction = nlohmann::json::array();
  for (Eigen::Index i = 0; i < mech.direction.size(); ++i) {
    direction.push_back(mech.direction(i));
  }
  doc["direction"] = std::move(direction);
  if (dist.seed != 0) doc["seed"] = dist.seed;
  if (!dist.label.empty()) doc["label"] = dist.label;
  return doc.dump(2) + "\n";
}

}  // namespace sparseleak
