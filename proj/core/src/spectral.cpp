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

#include "sparseleak/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace sparseleak {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiOffTol = 1e-12;

// First entry of magnitude above kSupportZeroTol made positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSupportZeroTol) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

double offdiag_norm(const Eigen::MatrixXd& m) {
  double s = 0.0;
  for (Eigen::Index p = 0; p < m.rows(); ++p)
    for (Eigen::Index q = p + 1; q < m.cols(); ++q) s += m(p, q) * m(p, q);
  return std::sqrt(2.0 * s);
}

// Euclidean projection of x onto {y >= 0, sum(y) <= radius}.  When the
// clipped point already fits, clipping is the projection; otherwise the
// solution is max(x - theta, 0) with theta from the usual sort-and-scan.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& x,
                                       double radius) {
  Eigen::VectorXd y = x.cwiseMax(0.0);
  if (y.sum() <= radius) return y;
  std::vector<double> u(x.data(), x.data() + x.size());
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double cand = (cumsum - radius) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) theta = cand;
  }
  return (x.array() - theta).max(0.0).matrix();
}

}  // namespace

SymmetricEigen eig_sym(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) {
    throw InputError("eig_sym: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.transpose()).norm() > 1e-10 * scale) {
    throw InputError("eig_sym: matrix not symmetric within tolerance");
  }

  Eigen::MatrixXd a = 0.5 * (m + m.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  if (n > 1) {
    const double skip_tol = kJacobiOffTol * scale / static_cast<double>(n);
    bool converged = false;
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
      if (offdiag_norm(a) <= kJacobiOffTol * scale) {
        converged = true;
        break;
      }
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (std::abs(apq) <= skip_tol) continue;
          const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          const double app = a(p, p);
          const double aqq = a(q, q);
          a(p, p) = app - t * apq;
          a(q, q) = aqq + t * apq;
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (Eigen::Index r = 0; r < n; ++r) {
            if (r != p && r != q) {
              const double arp = a(r, p);
              const double arq = a(r, q);
              a(r, p) = arp - s * (arq + tau * arp);
              a(p, r) = a(r, p);
              a(r, q) = arq + s * (arp - tau * arq);
              a(q, r) = a(r, q);
            }
            const double vrp = v(r, p);
            const double vrq = v(r, q);
            v(r, p) = vrp - s * (vrq + tau * vrp);
            v(r, q) = vrq + s * (vrp - tau * vrq);
          }
        }
      }
    }
    if (!converged && offdiag_norm(a) > kJacobiOffTol * scale) {
      throw SolverError("eig_sym: Jacobi iteration did not converge in 100 sweeps");
    }
  }

  for (Eigen::Index j = 0; j < n; ++j) fix_sign(v.col(j));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    if (a(i, i) < a(j, j)) return true;
    if (a(i, i) > a(j, j)) return false;
    return lex_less(v.col(i), v.col(j));
  });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[static_cast<std::size_t>(j)],
                      order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

Eigen::MatrixXd project_spectahedron(const Eigen::MatrixXd& m) {
  const SymmetricEigen eig = eig_sym(m);
  const Eigen::VectorXd lam = project_capped_simplex(eig.values, 1.0);
  Eigen::MatrixXd x =
      eig.vectors * lam.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (x + x.transpose());
}

Eigen::MatrixXd project_l1_ball(const Eigen::MatrixXd& m, double tau) {
  if (!(tau > 0.0)) {
    throw InputError("project_l1_ball: tau must be positive");
  }
  const double total = m.cwiseAbs().sum();
  if (total <= tau) return m;

  std::vector<double> u(m.data(), m.data() + m.size());
  for (double& x : u) x = std::abs(x);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double cand = (cumsum - tau) / static_cast<double>(j + 1);
    if (u[j] - cand > 0.0) theta = cand;
  }
  return m.unaryExpr([theta](double x) {
    const double shrunk = std::abs(x) - theta;
    return shrunk > 0.0 ? (x > 0.0 ? shrunk : -shrunk) : 0.0;
  });
}

Eigen::MatrixXd project_nullspace(const Eigen::MatrixXd& m,
                                  const Eigen::VectorXd& p) {
  if (std::abs(p.norm() - 1.0) > 1e-10) {
    throw InputError("project_nullspace: p must be a unit vector");
  }
  const Eigen::MatrixXd pi =
      Eigen::MatrixXd::Identity(p.size(), p.size()) - p * p.transpose();
  Eigen::MatrixXd x = pi * m * pi;
  return 0.5 * (x + x.transpose());
}

Eigen::MatrixXd orthobasis_complement(const Eigen::VectorXd& p_sub) {
  const Eigen::Index n = p_sub.size();
  if (n < 2) {
    throw InputError("orthobasis_complement: no orthogonal complement");
  }
  const double norm = p_sub.norm();
  if (!(norm > 0.0)) {
    throw InputError("orthobasis_complement: zero vector");
  }
  const Eigen::VectorXd q = p_sub / norm;

  // Householder reflector sending e_1 to -sign(q_0) q; its trailing columns
  // span the complement of q regardless of that sign.
  Eigen::VectorXd u = q;
  u(0) += (q(0) >= 0.0 ? 1.0 : -1.0);
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) -
                            (2.0 / u.squaredNorm()) * (u * u.transpose());
  Eigen::MatrixXd basis = h.rightCols(n - 1);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) fix_sign(basis.col(j));
  return basis;
}

}  // namespace sparseleak
