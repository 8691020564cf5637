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

#ifndef SPARSELEAK_COMMON_HPP_
#define SPARSELEAK_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace sparseleak {

// Entries with magnitude at or below this count as zero in every l0/support
// computation in the library.  One definition, shared by all modules, so that
// support sizes never disagree across layers.
inline constexpr double kSupportZeroTol = 1e-10;

// Malformed or infeasible user input: bad instance files, out-of-range
// budgets, tripped combinatorial guards.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure inside a solver: eigensolver non-convergence, a linear
// solve losing too much accuracy, an infeasible intermediate result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rounding produced a numerically zero direction (e.g. from X = 0).
class RoundingCollapsed : public SolverError {
 public:
  RoundingCollapsed() : SolverError("rounding collapsed") {}
};

}  // namespace sparseleak

#endif  // SPARSELEAK_COMMON_HPP_
