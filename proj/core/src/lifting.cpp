// SPDX-License-Identifier: Apache-2.0

#include "rsmar/lifting.hpp"

#include <stdexcept>

namespace rsmar {

Vector lift(const Vector& x, const Vector& x0, const Vector& r) {
  if (x.size() != x0.size() || x.size() != r.size()) {
    throw DimensionError("lift: vectors differ in length");
  }
  const double rr = r.squaredNorm();
  if (rr == 0.0) throw std::invalid_argument("no lifting needed: residual is zero");
  return x - (r.dot(x - x0) / rr) * r;
}

}  // namespace rsmar
