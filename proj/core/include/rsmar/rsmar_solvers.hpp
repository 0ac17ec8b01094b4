// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/operators.hpp"

namespace rsmar {

/// RSMAR-I: minimizes ||A (b - A x)|| over x0 + K_k(A, r0) using the
/// Arnoldi process on A r0 and a triangular change of basis back to
/// K_k(A, r0). Known to lose accuracy on some consistent problems.
SolveReport rsmar1_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts = {});

/// RSMAR-II: same iterates as RSMAR-I, computed from the Arnoldi process on
/// r0 and a second QR factorization of H_{k+2,k+1} Q_{k+1} [I_k; 0].
SolveReport rsmar2_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts = {});

}  // namespace rsmar
