// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rsmar/operators.hpp"

namespace rsmar {

/// x - (r^T (x - x0) / r^T r) r.
///
/// For a terminal least squares iterate of a range-symmetric system this is
/// the orthogonal projection of x0 onto the least squares solution set, i.e.
/// A^+ b when x0 lies in range(A). Throws std::invalid_argument when r = 0.
Vector lift(const Vector& x, const Vector& x0, const Vector& r);

}  // namespace rsmar
