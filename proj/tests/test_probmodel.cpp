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
#include <sstream>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"

using namespace sparseleak;
using sparseleak::testing::analytic2;

namespace {

// W^T W sqrt(P_X) with raw loops over plain arrays, independent of any
// matrix library.
std::vector<double> gram_times_sqrt_px(const Eigen::MatrixXd& w,
                                       const Eigen::VectorXd& sqrt_px) {
  const int k = static_cast<int>(w.rows());
  std::vector<double> wx(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      wx[static_cast<std::size_t>(i)] += w(i, j) * sqrt_px(j);
    }
  }
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      out[static_cast<std::size_t>(j)] +=
          w(i, j) * wx[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("marginals of the uniform matrix") {
  Eigen::MatrixXd uniform(2, 2);
  uniform << 0.25, 0.25, 0.25, 0.25;
  const auto [p_x, p_y] = marginals(uniform);
  CHECK(p_x(0) == doctest::Approx(0.5));
  CHECK(p_x(1) == doctest::Approx(0.5));
  CHECK(p_y(0) == doctest::Approx(0.5));
  CHECK(p_y(1) == doctest::Approx(0.5));
}

TEST_CASE("uniform independent coupling has a singular leakage matrix") {
  Eigen::MatrixXd uniform(2, 2);
  uniform << 0.25, 0.25, 0.25, 0.25;
  CHECK_THROWS_WITH_AS(make_joint(2, uniform),
                       doctest::Contains("singular leakage matrix"),
                       InputError);
}

TEST_CASE("diagonal coupling is valid with identity conditional") {
  const JointDistribution dist = analytic2();
  CHECK(dist.k == 2);
  CHECK((dist.p_x_given_y - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-14);
  CHECK(dist.p_x(0) == doctest::Approx(0.5));
  CHECK(dist.p_y(1) == doctest::Approx(0.5));
}

TEST_CASE("make_joint reports the offending entry") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.75, -0.25, 0.25, 0.25;
  CHECK_THROWS_WITH_AS(make_joint(2, bad),
                       doctest::Contains("p_xy(0,1)"), InputError);

  Eigen::MatrixXd short_sum(2, 2);
  short_sum << 0.25, 0.25, 0.25, 0.15;
  CHECK_THROWS_WITH_AS(make_joint(2, short_sum),
                       doctest::Contains("sum"), InputError);

  Eigen::MatrixXd zero_row(2, 2);
  zero_row << 0.5, 0.5, 0.0, 0.0;
  CHECK_THROWS_WITH_AS(make_joint(2, zero_row),
                       doctest::Contains("p_x(1)"), InputError);
}

TEST_CASE("load_joint parses the instance format") {
  std::istringstream good(
      R"({"k": 2, "p_xy": [[0.5, 0.0], [0.0, 0.5]], "seed": 9, "label": "d"})");
  const JointDistribution dist = load_joint(good);
  CHECK(dist.seed == 9);
  CHECK(dist.label == "d");
  CHECK(dist.p_xy(0, 0) == 0.5);

  std::istringstream broken("{\"k\": 2");
  CHECK_THROWS_AS(load_joint(broken), InputError);

  std::istringstream missing(R"({"k": 2})");
  CHECK_THROWS_AS(load_joint(missing), InputError);

  std::istringstream ragged(R"({"k": 2, "p_xy": [[0.5, 0.5], [0.5]]})");
  CHECK_THROWS_AS(load_joint(ragged), InputError);
}

TEST_CASE("instance files round-trip through JSON exactly") {
  const JointDistribution dist = random_instance(4, 123);
  std::istringstream stream(to_instance_json(dist));
  const JointDistribution reloaded = load_joint(stream);
  CHECK(reloaded.seed == dist.seed);
  CHECK(reloaded.label == dist.label);
  CHECK((reloaded.p_xy - dist.p_xy).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fixture files load as expected") {
  CHECK_NOTHROW(load_joint_file(sparseleak::testing::data_path("analytic2.json")));
  CHECK_THROWS_AS(
      load_joint_file(sparseleak::testing::data_path("singular2.json")),
      InputError);
  CHECK_THROWS_AS(
      load_joint_file(sparseleak::testing::data_path("corrupt.json")),
      InputError);
  CHECK_THROWS_AS(load_joint_file("/nonexistent/instance.json"), InputError);
}

TEST_CASE("random_instance is deterministic and validated") {
  const JointDistribution a = random_instance(4, 1);
  const JointDistribution b = random_instance(4, 1);
  CHECK((a.p_xy - b.p_xy).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_WITH_AS(random_instance(1, 0), doctest::Contains("k must be"),
                       InputError);

  const JointDistribution dist = random_instance(6, 7);
  CHECK(dist.seed == 7);
  CHECK_NOTHROW(make_joint(dist.k, dist.p_xy));
  CHECK(dist.p_x.minCoeff() > 1e-3 / 6.0);
  CHECK(dist.p_y.minCoeff() > 1e-3 / 6.0);
  // Marginals reconstruct from the joint.
  CHECK((dist.p_x - dist.p_xy.rowwise().sum()).cwiseAbs().maxCoeff() <=
        1e-14);
  CHECK((dist.p_y.transpose() - dist.p_xy.colwise().sum())
            .cwiseAbs()
            .maxCoeff() <= 1e-14);
  for (int y = 0; y < 6; ++y) {
    CHECK(dist.p_x_given_y.col(y).sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("build_operator on the identity-coupling fixture") {
  const LeakageOperator op = build_operator(analytic2());
  CHECK((op.w - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);
  CHECK((op.a - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-12);
  CHECK(op.sigma_sq(0) == doctest::Approx(1.0));
  CHECK(op.sigma_sq(1) == doctest::Approx(1.0));
}

TEST_CASE("build_operator invariants on seeded instances") {
  for (int k : {4, 6}) {
    const JointDistribution dist = random_instance(k, 11);
    const LeakageOperator op = build_operator(dist);

    // W maps sqrt(P_X) to sqrt(P_Y), a unit vector.
    CHECK(std::abs((op.w * op.p).norm() - 1.0) <= 1e-10);
    CHECK((op.w * op.p - dist.p_y.cwiseSqrt()).cwiseAbs().maxCoeff() <=
          1e-10);

    // A fixes sqrt(P_X); checked against the raw-loop computation.
    CHECK((op.a * op.p - op.p).cwiseAbs().maxCoeff() <= 1e-10);
    const std::vector<double> direct = gram_times_sqrt_px(op.w, op.p);
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(direct[static_cast<std::size_t>(i)] - op.p(i)) <= 1e-10);
    }

    // Stored decomposition reconstructs A; eigenvalues ascending from 1.
    const Eigen::MatrixXd rebuilt =
        op.v * op.sigma_sq.asDiagonal() * op.v.transpose();
    CHECK((rebuilt - op.a).norm() <= 1e-10 * op.a.norm());
    CHECK(std::abs(op.sigma_sq(0) - 1.0) <= 1e-8);
    CHECK(op.sigma_sq(0) >= -1e-12);
  }
}

TEST_CASE("verify_pointwise_constraints on the analytic example") {
  const JointDistribution dist = analytic2();

  const ConstraintReport zero =
      verify_pointwise_constraints(dist, dist.p_x, 1, 0.0);
  CHECK(zero.l0 == 0);
  CHECK(zero.chi_sq == 0.0);
  CHECK(zero.l0_ok);
  CHECK(zero.chi_ok);

  Eigen::VectorXd cond(2);
  cond << 0.55, 0.45;
  const ConstraintReport rep = verify_pointwise_constraints(dist, cond, 2, 0.1);
  CHECK(rep.l0 == 2);
  CHECK(rep.chi_sq == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(rep.l0_ok);
  CHECK(rep.chi_ok);  // equality case chi^2 == eps^2

  Eigen::VectorXd not_prob(2);
  not_prob << 0.55, 0.5;  // one entry perturbed only: breaks the sum
  CHECK_THROWS_WITH_AS(verify_pointwise_constraints(dist, not_prob, 2, 0.1),
                       doctest::Contains("not a probability vector"),
                       InputError);
}

TEST_CASE("chi-squared equals the weighted perturbation norm") {
  const JointDistribution dist = random_instance(5, 3);
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd j(5);
    for (int i = 0; i < 5; ++i) {
      j(i) = 2.0 * sparseleak::testing::uniform01(rng) - 1.0;
    }
    j.array() -= j.mean();  // sum-zero perturbation
    const double eps = 1e-3 * (trial + 1);
    const Eigen::VectorXd cond = dist.p_x + eps * j;
    REQUIRE(cond.minCoeff() > 0.0);
    const ConstraintReport rep =
        verify_pointwise_constraints(dist, cond, 5, 1.0);
    const double weighted =
        (dist.p_x.cwiseSqrt().cwiseInverse().cwiseProduct(j)).squaredNorm();
    CHECK(rep.chi_sq ==
          doctest::Approx(eps * eps * weighted).epsilon(1e-11));
  }
}
