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

#include "sparseleak/probmodel.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sparseleak/spectral.hpp"

namespace sparseleak {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kColumnSumTol = 1e-10;
constexpr double kLoadRcondFloor = 1e-8;
constexpr double kGenRcondFloor = 1e-6;
constexpr int kMaxGenerationRounds = 1000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Validation shared by make_joint (throwing) and the instance generator
// (rejection).  Returns an error description, or nullopt when valid.
std::optional<std::string> validate(int k, const Eigen::MatrixXd& p_xy,
                                    double marginal_floor,
                                    double rcond_floor) {
  if (k < 1) return "k must be a positive integer";
  if (p_xy.rows() != k || p_xy.cols() != k) {
    return "p_xy must be " + std::to_string(k) + "x" + std::to_string(k);
  }
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      if (p_xy(x, y) < 0.0) {
        return "negative entry p_xy(" + std::to_string(x) + "," +
               std::to_string(y) + ") = " + fmt(p_xy(x, y));
      }
    }
  }
  const double total = p_xy.sum();
  if (std::abs(total - 1.0) > kSumTol) {
    return "entries sum to " + fmt(total) + ", expected 1 within 1e-12";
  }
  const Eigen::VectorXd p_x = p_xy.rowwise().sum();
  const Eigen::VectorXd p_y = p_xy.colwise().sum();
  for (int x = 0; x < k; ++x) {
    if (!(p_x(x) > marginal_floor)) {
      return "zero marginal p_x(" + std::to_string(x) + ") = " + fmt(p_x(x));
    }
  }
  for (int y = 0; y < k; ++y) {
    if (!(p_y(y) > marginal_floor)) {
      return "zero marginal p_y(" + std::to_string(y) + ") = " + fmt(p_y(y));
    }
  }
  const Eigen::MatrixXd p_x_given_y =
      p_xy * p_y.cwiseInverse().asDiagonal();
  for (int y = 0; y < k; ++y) {
    const double s = p_x_given_y.col(y).sum();
    if (std::abs(s - 1.0) > kColumnSumTol) {
      return "column " + std::to_string(y) + " of p_x_given_y sums to " +
             fmt(s);
    }
  }
  const double rcond = Eigen::PartialPivLU<Eigen::MatrixXd>(p_x_given_y).rcond();
  if (!(rcond >= rcond_floor)) {
    return "singular leakage matrix (rcond estimate " + fmt(rcond) + " < " +
           fmt(rcond_floor) + ")";
  }
  return std::nullopt;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> marginals(
    const Eigen::MatrixXd& p_xy) {
  return {p_xy.rowwise().sum(), p_xy.colwise().sum()};
}

JointDistribution make_joint(int k, const Eigen::MatrixXd& p_xy,
                             std::uint64_t seed, const std::string& label) {
  if (auto err = validate(k, p_xy, 0.0, kLoadRcondFloor)) {
    throw InputError("invalid joint distribution: " + *err);
  }
  JointDistribution dist;
  dist.k = k;
  dist.p_xy = p_xy;
  dist.p_x = p_xy.rowwise().sum();
  dist.p_y = p_xy.colwise().sum();
  dist.p_x_given_y = p_xy * dist.p_y.cwiseInverse().asDiagonal();
  dist.seed = seed;
  dist.label = label;
  return dist;
}

JointDistribution load_joint(std::istream& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(source);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("instance parse failure: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("k") || !doc.contains("p_xy")) {
    throw InputError("instance parse failure: expected object with \"k\" and \"p_xy\"");
  }
  if (!doc["k"].is_number_integer()) {
    throw InputError("instance parse failure: \"k\" must be an integer");
  }
  const int k = doc["k"].get<int>();
  if (k < 1) throw InputError("invalid joint distribution: k must be a positive integer");
  const auto& rows = doc["p_xy"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != k) {
    throw InputError("instance parse failure: \"p_xy\" must hold " +
                     std::to_string(k) + " rows");
  }
  Eigen::MatrixXd p_xy(k, k);
  for (int x = 0; x < k; ++x) {
    const auto& row = rows[static_cast<std::size_t>(x)];
    if (!row.is_array() || static_cast<int>(row.size()) != k) {
      throw InputError("instance parse failure: row " + std::to_string(x) +
                       " must hold " + std::to_string(k) + " numbers");
    }
    for (int y = 0; y < k; ++y) {
      const auto& cell = row[static_cast<std::size_t>(y)];
      if (!cell.is_number()) {
        throw InputError("instance parse failure: p_xy(" + std::to_string(x) +
                         "," + std::to_string(y) + ") is not a number");
      }
      p_xy(x, y) = cell.get<double>();
    }
  }
  const std::uint64_t seed =
      doc.contains("seed") ? doc["seed"].get<std::uint64_t>() : 0;
  const std::string label =
      doc.contains("label") ? doc["label"].get<std::string>() : std::string{};
  return make_joint(k, p_xy, seed, label);
}

JointDistribution load_joint_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  return load_joint(in);
}

std::string to_instance_json(const JointDistribution& dist) {
  nlohmann::json doc;
  doc["k"] = dist.k;
  nlohmann::json rows = nlohmann::json::array();
  for (int x = 0; x < dist.k; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (int y = 0; y < dist.k; ++y) row.push_back(dist.p_xy(x, y));
    rows.push_back(std::move(row));
  }
  doc["p_xy"] = std::move(rows);
  if (dist.seed != 0) doc["seed"] = dist.seed;
  if (!dist.label.empty()) doc["label"] = dist.label;
  return doc.dump(2) + "\n";
}

JointDistribution random_instance(int k, std::uint64_t seed) {
  if (k < 2) {
    throw InputError("random_instance: k must be >= 2 (got " +
                     std::to_string(k) + ")");
  }
  std::mt19937_64 rng(seed);
  // 53-bit uniform doubles straight from the engine, so draws are identical
  // across standard libraries.
  const auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const double floor = 1e-3 / static_cast<double>(k);
  Eigen::MatrixXd p_xy(k, k);
  for (int round = 0; round < kMaxGenerationRounds; ++round) {
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) p_xy(x, y) = uniform();
    p_xy /= p_xy.sum();
    if (!validate(k, p_xy, floor, kGenRcondFloor)) {
      return make_joint(k, p_xy, seed,
                        "random-k" + std::to_string(k) + "-seed" +
                            std::to_string(seed));
    }
  }
  throw InputError(
      "random_instance: no valid draw after 1000 rounds (k too large for the "
      "generation floors)");
}

LeakageOperator build_operator(const JointDistribution& dist) {
  const Eigen::VectorXd sqrt_px = dist.p_x.cwiseSqrt();
  const Eigen::VectorXd sqrt_py = dist.p_y.cwiseSqrt();

  const Eigen::MatrixXd rhs =
      Eigen::MatrixXd(sqrt_px.asDiagonal());  // [sqrt(P_X)]
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(dist.p_x_given_y);
  const Eigen::MatrixXd solved = lu.solve(rhs);  // P_{X|Y}^{-1} [sqrt(P_X)]
  const double residual =
      (dist.p_x_given_y * solved - rhs).norm() / std::max(1.0, rhs.norm());
  if (!(residual <= 1e-8)) {
    throw SolverError(
        "build_operator: leakage matrix solve lost accuracy (residual " +
        fmt(residual) + ")");
  }

  LeakageOperator op;
  op.w = sqrt_py.cwiseInverse().asDiagonal() * solved;
  Eigen::MatrixXd a = op.w.transpose() * op.w;
  op.a = 0.5 * (a + a.transpose());
  const SymmetricEigen eig = eig_sym(op.a);
  op.sigma_sq = eig.values;
  op.v = eig.vectors;
  op.p = sqrt_px;
  return op;
}

ConstraintReport verify_pointwise_constraints(const JointDistribution& dist,
                                              const Eigen::VectorXd& cond,
                                              int n_budget, double eps) {
  if (cond.size() != dist.k) {
    throw InputError("verify_pointwise_constraints: cond has size " +
                     std::to_string(cond.size()) + ", expected " +
                     std::to_string(dist.k));
  }
  for (int x = 0; x < dist.k; ++x) {
    if (cond(x) < -1e-12) {
      throw InputError(
          "verify_pointwise_constraints: not a probability vector, cond(" +
          std::to_string(x) + ") = " + fmt(cond(x)));
    }
  }
  const double total = cond.sum();
  if (std::abs(total - 1.0) > 1e-10) {
    throw InputError(
        "verify_pointwise_constraints: not a probability vector, sums to " +
        fmt(total));
  }

  ConstraintReport report;
  double chi = 0.0;
  for (int x = 0; x < dist.k; ++x) {
    const double diff = cond(x) - dist.p_x(x);
    if (std::abs(diff) > kSupportZeroTol) ++report.l0;
    chi += diff * diff / dist.p_x(x);
  }
  report.chi_sq = chi;
  report.l0_ok = report.l0 <= n_budget;
  // Equality cases like chi^2 == eps^2 must not fail from rounding alone.
  report.chi_ok = chi <= eps * eps + 1e-12 * std::max(1.0, eps * eps);
  return report;
}

}  // namespace sparseleak
