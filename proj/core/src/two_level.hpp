// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/operators.hpp"

namespace rsmar::detail {

/// Minimizes ||A (b - A x)|| over x0 + K_k(A, s) through the Arnoldi
/// relation for s and a second QR of H_{k+2,k+1} Q_{k+1} [I_k; 0].
/// seed_is_aresidual selects s = A r0 (DGMRES, no lifting) over s = r0
/// (RSMAR-II, lifted).
SolveReport two_level_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                            const SolveOptions& opts, bool seed_is_aresidual);

}  // namespace rsmar::detail
