// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rsmar/operators.hpp"

namespace rsmar {

/// The Arnoldi seed is (numerically) zero: the system is already solved in
/// the sense the caller asked about.
class ZeroSeedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StepOutcome { advanced, breakdown };

/// Modified Gram-Schmidt Arnoldi process A V_k = V_{k+1} H_{k+1,k}.
///
/// Column j (0-based) of the Hessenberg matrix is stored with its j + 2
/// leading entries. When the process breaks down at step k the k-th column
/// is still appended (its subdiagonal entry is stored as exactly zero), no
/// basis vector is added, and A V_k = V_k H_k holds.
class ArnoldiState {
 public:
  /// Throws ZeroSeedError when ||seed|| <= breakdown_tol.
  static ArnoldiState init(const Vector& seed, double breakdown_tol, bool reorthogonalize = false);

  /// Throws std::logic_error after a breakdown.
  StepOutcome step(const LinearOperator& a);

  int steps() const { return static_cast<int>(columns_.size()); }
  Index dimension() const { return basis_.front().size(); }
  double seed_norm() const { return seed_norm_; }
  bool broke_down() const { return breakdown_step_.has_value(); }
  /// 1-based step at which h_{k+1,k} vanished (ell or m).
  std::optional<int> breakdown_step() const { return breakdown_step_; }
  /// The subdiagonal value that triggered the breakdown, before zeroing.
  double breakdown_residual() const { return breakdown_residual_; }

  const std::vector<Vector>& basis() const { return basis_; }
  const Vector& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }

  /// (k+1) x k Hessenberg matrix for the first k columns (default: all).
  DenseMatrix hessenberg(std::optional<int> k = std::nullopt) const;
  /// Leading k x k block.
  DenseMatrix square(int k) const;
  /// V_k as an n x k matrix.
  DenseMatrix basis_matrix(int k) const;

 private:
  ArnoldiState() = default;

  std::vector<Vector> basis_;
  std::vector<Vector> columns_;
  double seed_norm_ = 0.0;
  double breakdown_tol_ = 0.0;
  double breakdown_residual_ = 0.0;
  bool reorthogonalize_ = false;
  std::optional<int> breakdown_step_;
};

inline ArnoldiState arnoldi_init(const Vector& seed, double breakdown_tol,
                                 bool reorthogonalize = false) {
  return ArnoldiState::init(seed, breakdown_tol, reorthogonalize);
}

inline StepOutcome arnoldi_step(ArnoldiState& state, const LinearOperator& a) {
  return state.step(a);
}

}  // namespace rsmar
