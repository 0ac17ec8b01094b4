// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/operators.hpp"

namespace rsmar {

/// GMRES: minimizes ||b - A x|| over x0 + K_k(A, r0).
///
/// On an inconsistent range-symmetric system the process breaks down at
/// step ell with a singular square Hessenberg matrix; the previous iterate
/// is returned (termination singular_final_system) and lifted.
SolveReport gmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                        const SolveOptions& opts = {});

/// RRGMRES: minimizes ||b - A x|| over x0 + K_k(A, A r0). No lifting.
SolveReport rrgmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                          const SolveOptions& opts = {});

/// DGMRES for index-one matrices: minimizes ||A (b - A x)|| over
/// x0 + K_k(A, A r0). No lifting.
SolveReport dgmres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts = {});

}  // namespace rsmar
