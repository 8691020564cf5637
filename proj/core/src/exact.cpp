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

#include "sparseleak/exact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sparseleak/spectral.hpp"
#include "sparseleak/thresholds.hpp"

namespace sparseleak {

namespace {

constexpr double kEnumerationGuard = 1e7;

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c *= static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

// Lexicographic successor of a size-m combination of {0..n-1}; false at end.
bool next_combination(std::vector<int>& idx, int n) {
  const int m = static_cast<int>(idx.size());
  for (int i = m - 1; i >= 0; --i) {
    if (idx[i] < n - m + i) {
      ++idx[i];
      for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kSupportZeroTol) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

std::pair<double, Eigen::VectorXd> restricted_rayleigh(
    const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
    const std::vector<int>& s) {
  const int k = static_cast<int>(a.rows());
  if (s.empty()) {
    throw InputError("restricted_rayleigh: empty support");
  }
  for (int i : s) {
    if (i < 0 || i >= k) {
      throw InputError("restricted_rayleigh: support index " +
                       std::to_string(i) + " out of range");
    }
  }
  if (s.size() == 1) {
    return {0.0, Eigen::VectorXd::Zero(k)};
  }

  const int m = static_cast<int>(s.size());
  Eigen::VectorXd p_sub(m);
  Eigen::MatrixXd a_sub(m, m);
  for (int i = 0; i < m; ++i) {
    p_sub(i) = p(s[static_cast<std::size_t>(i)]);
    for (int j = 0; j < m; ++j) {
      a_sub(i, j) = a(s[static_cast<std::size_t>(i)],
                      s[static_cast<std::size_t>(j)]);
    }
  }

  const Eigen::MatrixXd basis = orthobasis_complement(p_sub);
  Eigen::MatrixXd reduced = basis.transpose() * a_sub * basis;
  reduced = 0.5 * (reduced + reduced.transpose()).eval();
  const SymmetricEigen eig = eig_sym(reduced);

  Eigen::VectorXd l_sub = basis * eig.vectors.col(m - 2);  // top eigenvector
  l_sub /= l_sub.norm();

  Eigen::VectorXd l = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < m; ++i) l(s[static_cast<std::size_t>(i)]) = l_sub(i);
  fix_sign(l);
  return {l.dot(a * l), l};
}

SparseSolution solve_exact(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                           int n_budget) {
  const int k = static_cast<int>(a.rows());
  if (n_budget < 1 || n_budget > k) {
    throw InputError("solve_exact: n_budget must lie in [1, " +
                     std::to_string(k) + "]");
  }
  const int m = std::min(n_budget, k);
  const double count = binomial(k, m);
  if (count > kEnumerationGuard) {
    throw InputError(
        "solve_exact: support enumeration needs " + std::to_string(count) +
        " candidate supports (> 1e7); use the SDP relaxation path "
        "(--sdp-only) instead");
  }

  SparseSolution best;
  best.l = Eigen::VectorXd::Zero(k);
  best.value = 0.0;
  best.n_budget = n_budget;

  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  do {
    auto [value, l] = restricted_rayleigh(a, p, idx);
    // Strict improvement only: enumeration is lexicographic, so ties keep
    // the lexicographically smallest support.
    if (value > best.value) {
      best.value = value;
      best.l = std::move(l);
      best.support = idx;
    }
  } while (next_combination(idx, k));

  if (best.value == 0.0) {
    best.l = Eigen::VectorXd::Zero(k);
    best.support.clear();
  }
  return best;
}

ParetoCurve pareto_exact(const Eigen::MatrixXd& a, const Eigen::VectorXd& p,
                         int n_max) {
  const int k = static_cast<int>(a.rows());
  if (n_max < 1 || n_max > k) {
    throw InputError("pareto_exact: n_max must lie in [1, " +
                     std::to_string(k) + "]");
  }
  ParetoCurve curve;
  curve.lambda_star = top_direction(a, p).lambda_star;
  curve.points.reserve(static_cast<std::size_t>(n_max));
  double prev = -1.0;
  for (int n = 1; n <= n_max; ++n) {
    const double value = solve_exact(a, p, n).value;
    if (value < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
      throw std::logic_error(
          "pareto_exact: value decreased between budgets " +
          std::to_string(n - 1) + " and " + std::to_string(n));
    }
    curve.points.push_back({n, value});
    prev = value;
  }
  return curve;
}

}  // namespace sparseleak
