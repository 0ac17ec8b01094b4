// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <rsmar/rsmar.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

namespace rsmar::test {

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline DenseMatrix mat(Index rows, Index cols, std::initializer_list<double> row_major) {
  DenseMatrix m(rows, cols);
  auto it = row_major.begin();
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = *it++;
  }
  return m;
}

inline double rel_err(const Vector& x, const Vector& ref) {
  const double scale = ref.norm();
  return scale > 0.0 ? (x - ref).norm() / scale : x.norm();
}

inline Vector final_iterate(const SolveReport& r) {
  return r.lifted_solution ? *r.lifted_solution : r.solution;
}

inline bool nonincreasing(const std::vector<double>& h, double slack = 1e-12) {
  for (std::size_t k = 1; k < h.size(); ++k) {
    if (h[k] > h[k - 1] * (1.0 + slack)) return false;
  }
  return true;
}

// Small seeded system: n in [lo, hi], rank 3n/4, condition in [10, 1e3].
struct SmallSystem {
  GeneratedSystem sys;
  Vector b;
  Vector exact;
};

inline SmallSystem small_system(std::uint64_t seed, bool symmetric, bool consistent,
                                Index lo = 12, Index hi = 40) {
  Rng rng(seed * 2654435761ULL + 17);
  const Index n = lo + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(hi - lo + 1));
  const double cond = std::pow(10.0, 1.0 + 2.0 * rng.uniform());
  const RandomSpec spec{n, (3 * n) / 4, cond, seed};
  SmallSystem s{symmetric ? make_random_symmetric_singular(spec) : make_random_range_symmetric(spec),
                random_gaussian_vector(n, rng), {}};
  if (consistent) s.b = s.sys.a * s.b;
  s.exact = s.sys.pinv * s.b;
  return s;
}

inline SolveOptions tight(bool consistent, Index n) {
  SolveOptions o;
  o.tol = consistent ? 1e-14 : 1e-10;
  o.maxit = static_cast<int>(4 * n);
  o.reorthogonalize = true;
  return o;
}

}  // namespace rsmar::test
