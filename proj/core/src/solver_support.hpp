// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rsmar/arnoldi.hpp"
#include "rsmar/operators.hpp"

namespace rsmar::detail {

/// Relative threshold below which the square Hessenberg (or tridiagonal)
/// matrix at exact termination is treated as singular, i.e. the system is
/// inconsistent and the previous iterate is the least squares solution.
inline constexpr double kFinalSystemSingularTol = 1e-10;

/// Residuals smaller than this fraction of ||r_0|| are never lifted: the
/// correction direction would be rounding noise.
inline constexpr double kLiftFloor = 1.4901161193847656e-08;  // sqrt(eps)

/// Guard for triangular solves before termination.
inline constexpr double kMidRunSingularTol = 1e-14;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Per-solve bookkeeping shared by every method: matvec counting, history
/// recording and the unified stopping rule
///   ||r_k|| <= tol * beta_1   or   ||A r_k|| <= tol * hat beta_1.
class SolveContext {
 public:
  /// Computes r_0 = b - A x_0 (one counted product) and A r_0 (counted only
  /// when the algorithm itself needs it, see `ar0_counted`).
  SolveContext(const LinearOperator& a, const Vector& b, const Vector& x0, const SolveOptions& opts,
               SolveReport& report, bool ar0_counted, bool native_is_aresidual);

  Vector apply(const Vector& v) {
    ++matvecs_;
    return a_.apply(v);
  }
  /// The operator with every application counted.
  LinearOperator counted() {
    return LinearOperator(a_.size(), [this](const Vector& v) { return apply(v); });
  }

  const Vector& b() const { return b_; }
  const Vector& x0() const { return x0_; }
  const Vector& r0() const { return r0_; }
  const Vector& ar0() const { return ar0_; }
  double beta1() const { return beta1_; }
  double betahat1() const { return betahat1_; }
  const SolveOptions& opts() const { return opts_; }
  int iteration() const { return iteration_; }
  bool budget_left() const { return iteration_ < opts_.maxit; }
  std::int64_t matvecs() const { return matvecs_; }

  /// True when the zero-iteration exit applies (r_0 = 0 or A r_0 = 0).
  bool trivially_solved() const;
  /// Finishes with x_0 after trivially_solved().
  void finish_trivial(bool allow_lift);

  /// Records iterate number iteration()+1. `make_x` is only invoked when
  /// explicit histories are enabled. Missing estimates are stored as NaN.
  StopMonitor record(const std::function<Vector()>& make_x, std::optional<double> res_estimate,
                     std::optional<double> ares_estimate, double native_estimate);

  /// Back-fills the A-residual of iterate k when it only becomes available
  /// one step late (estimate mode). Returns true when it meets the monitor.
  bool patch_aresidual(int k, double value);

  /// Drops the most recent history entry (used when a method steps past its
  /// final iterate, e.g. GMRES on a singular final system).
  void rollback_last();

  /// Stores the result, fills the trailing explicit A-residual if it is
  /// missing, and lifts when the final residual looks inconsistent.
  void finish(const Vector& x, Termination termination, StopMonitor monitor, bool allow_lift);

 private:
  StopMonitor check(double res, double ares) const;

  const LinearOperator& a_;
  const Vector& b_;
  const Vector& x0_;
  const SolveOptions& opts_;
  SolveReport& report_;
  Vector r0_;
  Vector ar0_;
  double beta1_ = 0.0;
  double betahat1_ = 0.0;
  std::int64_t matvecs_ = 0;
  int iteration_ = 0;
};

/// Callable producing an iterate on first use and reusing it afterwards.
template <typename F>
auto cached(F&& compute) {
  return [compute = std::forward<F>(compute), cache = std::optional<Vector>()]() mutable {
    if (!cache) cache = compute();
    return *cache;
  };
}

/// H_{k+1,k} y for the first k Arnoldi columns.
Vector hessenberg_times(const ArnoldiState& arnoldi, int k, const Vector& y);

/// x_start + sum_j z_j * basis[j + offset].
Vector combine(const Vector& x_start, const std::vector<Vector>& basis, const Vector& z,
               std::size_t offset = 0);

}  // namespace rsmar::detail
