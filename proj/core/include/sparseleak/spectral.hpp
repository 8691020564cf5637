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

#ifndef SPARSELEAK_SPECTRAL_HPP_
#define SPARSELEAK_SPECTRAL_HPP_

#include <Eigen/Dense>

#include "sparseleak/common.hpp"

namespace sparseleak {

// Full eigendecomposition of a real symmetric matrix.  Eigenvalues ascending;
// eigenvectors orthonormal columns, each sign-fixed so that its first entry
// of magnitude above kSupportZeroTol is positive.  Exact eigenvalue ties are
// ordered by the sign-fixed lexicographic order of the eigenvectors.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// Cyclic Jacobi iteration.  The input must be symmetric within 1e-10
// (relative); it is symmetrized internally before the sweeps.  Throws
// SolverError if the off-diagonal mass has not vanished after 100 sweeps.
SymmetricEigen eig_sym(const Eigen::MatrixXd& m);

// Frobenius projection onto {X symmetric : X >= 0, tr(X) <= 1}.
// Eigenvalues are projected onto the nonnegative simplex-capped set, the
// matrix is reassembled.  Idempotent.
Eigen::MatrixXd project_spectahedron(const Eigen::MatrixXd& m);

// Frobenius projection onto {M : sum_ij |M_ij| <= tau} by entrywise
// soft-thresholding, with the threshold located by sort-and-scan.
Eigen::MatrixXd project_l1_ball(const Eigen::MatrixXd& m, double tau);

// Frobenius projection of a symmetric matrix onto the subspace
// {X symmetric : X p = 0}, namely Pi m Pi with Pi = I - p p^T.
// p must be unit within 1e-10.
Eigen::MatrixXd project_nullspace(const Eigen::MatrixXd& m,
                                  const Eigen::VectorXd& p);

// Orthonormal basis (n x (n-1), columns) of the complement of a nonzero
// vector, built from the Householder reflector that maps e_1 onto the
// normalized input.  Deterministic; columns are sign-fixed like eigenvectors.
// Throws InputError for n < 2 ("no orthogonal complement").
Eigen::MatrixXd orthobasis_complement(const Eigen::VectorXd& p_sub);

}  // namespace sparseleak

#endif  // SPARSELEAK_SPECTRAL_HPP_
