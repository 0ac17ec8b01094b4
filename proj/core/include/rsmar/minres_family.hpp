// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/operators.hpp"

namespace rsmar {

/// MINRES (Paige-Saunders recurrence) for symmetric A. `restart` is
/// ignored: short recurrences keep constant storage.
SolveReport minres_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                         const SolveOptions& opts = {});

/// MINARES-I for symmetric A: minimizes ||A (b - A x)|| over x0 + K_k(A, r0)
/// with a Lanczos process on A r0 and a constant number of work vectors.
/// `restart` is ignored.
SolveReport minares1_solve(const LinearOperator& a, const Vector& b, const Vector& x0,
                           const SolveOptions& opts = {});

}  // namespace rsmar
