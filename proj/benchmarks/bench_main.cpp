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

#include <benchmark/benchmark.h>

#include <random>

#include "sparseleak/exact.hpp"
#include "sparseleak/probmodel.hpp"
#include "sparseleak/sdp.hpp"
#include "sparseleak/spectral.hpp"

namespace {

using namespace sparseleak;

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }
  }
  return 0.5 * (m + m.transpose());
}

void BM_EigSym(benchmark::State& state) {
  const Eigen::MatrixXd m = random_symmetric(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_sym(m));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigSym)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_ProjectL1(benchmark::State& state) {
  const Eigen::MatrixXd m = 5.0 * random_symmetric(32, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_l1_ball(m, 3.0));
  }
}
BENCHMARK(BM_ProjectL1);

void BM_ProjectSpectahedron(benchmark::State& state) {
  const Eigen::MatrixXd m = random_symmetric(16, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_spectahedron(m));
  }
}
BENCHMARK(BM_ProjectSpectahedron);

void BM_BuildOperator(benchmark::State& state) {
  const JointDistribution dist =
      random_instance(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_operator(dist));
  }
}
BENCHMARK(BM_BuildOperator)->Arg(4)->Arg(8)->Arg(16);

void BM_SolveExact(benchmark::State& state) {
  const JointDistribution dist =
      random_instance(static_cast<int>(state.range(0)), 5);
  const LeakageOperator op = build_operator(dist);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(op.a, op.p, 3));
  }
}
BENCHMARK(BM_SolveExact)->Arg(8)->Arg(12);

void BM_SolveSdpMidTau(benchmark::State& state) {
  const JointDistribution dist = random_instance(6, 5);
  const LeakageOperator op = build_operator(dist);
  SolverOptions opts;
  opts.tolerance = 1e-8;
  opts.max_iterations = 100000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_sdp(op.a, op.p, 3.0, opts));
  }
}
BENCHMARK(BM_SolveSdpMidTau);

}  // namespace

BENCHMARK_MAIN();
