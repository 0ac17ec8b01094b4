// SPDX-License-Identifier: Apache-2.0

#include "rsmar/arnoldi.hpp"

#include <algorithm>
#include <cmath>

namespace rsmar {

ArnoldiState ArnoldiState::init(const Vector& seed, double breakdown_tol, bool reorthogonalize) {
  const double beta = norm2(seed);
  if (!(beta > breakdown_tol) || beta == 0.0) {
    throw ZeroSeedError("Arnoldi: zero seed vector");
  }
  ArnoldiState s;
  s.seed_norm_ = beta;
  s.breakdown_tol_ = breakdown_tol;
  s.reorthogonalize_ = reorthogonalize;
  s.basis_.push_back(seed / beta);
  return s;
}

StepOutcome ArnoldiState::step(const LinearOperator& a) {
  if (broke_down()) {
    throw std::logic_error("Arnoldi: step requested after breakdown");
  }
  const int k = steps();  // 0-based index of the new column
  Vector w = a.apply(basis_[static_cast<std::size_t>(k)]);
  const double aw_norm = norm2(w);

  Vector h = Vector::Zero(k + 2);
  for (int i = 0; i <= k; ++i) {
    const auto& vi = basis_[static_cast<std::size_t>(i)];
    h[i] = vi.dot(w);
    w -= h[i] * vi;
  }
  if (reorthogonalize_) {
    for (int i = 0; i <= k; ++i) {
      const auto& vi = basis_[static_cast<std::size_t>(i)];
      const double corr = vi.dot(w);
      h[i] += corr;
      w -= corr * vi;
    }
  }
  const double sub = norm2(w);
  if (sub <= breakdown_tol_ * std::max(1.0, aw_norm)) {
    breakdown_residual_ = sub;
    h[k + 1] = 0.0;
    columns_.push_back(std::move(h));
    breakdown_step_ = k + 1;
    return StepOutcome::breakdown;
  }
  h[k + 1] = sub;
  columns_.push_back(std::move(h));
  basis_.push_back(w / sub);
  return StepOutcome::advanced;
}

DenseMatrix ArnoldiState::hessenberg(std::optional<int> k) const {
  const int cols = k.value_or(steps());
  if (cols < 0 || cols > steps()) throw std::out_of_range("Arnoldi: column count out of range");
  DenseMatrix h = DenseMatrix::Zero(cols + 1, cols);
  for (int j = 0; j < cols; ++j) {
    h.col(j).head(j + 2) = columns_[static_cast<std::size_t>(j)];
  }
  return h;
}

DenseMatrix ArnoldiState::square(int k) const { return hessenberg(k).topRows(k); }

DenseMatrix ArnoldiState::basis_matrix(int k) const {
  if (k < 0 || k > static_cast<int>(basis_.size())) {
    throw std::out_of_range("Arnoldi: basis size out of range");
  }
  DenseMatrix v(dimension(), k);
  for (int j = 0; j < k; ++j) v.col(j) = basis_[static_cast<std::size_t>(j)];
  return v;
}

}  // namespace rsmar
