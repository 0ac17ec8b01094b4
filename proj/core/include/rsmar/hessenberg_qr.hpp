// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "rsmar/operators.hpp"

namespace rsmar {

/// Plane rotation G = [[c, s], [-s, c]] acting on a pair of rows.
struct Givens {
  double c = 1.0;
  double s = 0.0;

  /// Rotation with G (x, y)^T = (hypot(x, y), 0)^T. Identity when x = y = 0.
  static Givens zeroing(double x, double y);

  void apply(double& x, double& y) const {
    const double tx = c * x + s * y;
    y = -s * x + c * y;
    x = tx;
  }
  void apply_transpose(double& x, double& y) const {
    const double tx = c * x - s * y;
    y = s * x + c * y;
    x = tx;
  }
};

/// Triangular back substitution on the leading k x k block of `r` against the
/// first k entries of `rhs`. Returns nullopt when min|r_ii| <= singular_tol *
/// max|r_ii|.
std::optional<Vector> solve_upper(const DenseMatrix& r, const Vector& rhs, int k,
                                  double singular_tol);

/// Incremental QR of a column-growing (k+1) x k upper-Hessenberg matrix,
/// H_{k+1,k} = Q_{k+1} [R_k; 0], together with t = Q^T c for a right-hand
/// side c that starts as rhs_norm * e_1 and may gain one entry per column.
class HessenbergQr {
 public:
  explicit HessenbergQr(double rhs_norm);

  /// Appends the next Hessenberg column (cols() + 2 entries). `rhs_entry` is
  /// the new (k+1)-th entry of c before rotation. Returns |e_{k+1}^T t|, the
  /// minimal residual of min_z ||c - H_{k+1,k} z||.
  double append_column(const Vector& column, double rhs_entry = 0.0);

  int cols() const { return static_cast<int>(rotations_.size()); }
  double rhs_norm() const { return rhs_norm_; }
  double tail() const { return std::abs(t_[cols()]); }
  const std::vector<Givens>& rotations() const { return rotations_; }
  /// Transformed right-hand side, length cols() + 1.
  const Vector& rhs() const { return t_; }
  /// k x k upper triangular factor.
  DenseMatrix r() const;
  /// |r_kk| of the last column.
  double last_diagonal() const;

  /// Minimizer for the leading k columns (default: all). nullopt when the
  /// triangular factor is numerically singular.
  std::optional<Vector> solve(std::optional<int> k = std::nullopt,
                              double singular_tol = 1e-14) const;

  /// Q y and Q^T y for y of length cols() + 1.
  Vector apply_q(Vector y) const;
  Vector apply_qt(Vector y) const;

 private:
  double rhs_norm_;
  std::vector<Givens> rotations_;
  std::vector<Vector> r_cols_;
  Vector t_;
};

/// Incremental QR of a (k+2) x k matrix that vanishes below its second
/// subdiagonal. Each appended column receives at most two new rotations.
class BandedQr {
 public:
  /// Right-hand side (a, b): the first two entries of the (k+2)-vector.
  BandedQr(double a, double b);

  /// Appends a column with cols() + 3 entries. Returns the two trailing
  /// entries |e_{k+1}^T t|, |e_{k+2}^T t| of the transformed right-hand side.
  std::pair<double, double> append_column(const Vector& column);

  int cols() const { return static_cast<int>(r_cols_.size()); }
  double residual() const;
  const Vector& rhs() const { return t_; }
  DenseMatrix r() const;
  std::optional<Vector> solve(double singular_tol = 1e-14) const;
  /// Q y for y of length cols() + 2.
  Vector apply_q(Vector y) const;

 private:
  struct PlacedRotation {
    int row;  // acts on rows (row, row + 1)
    Givens g;
  };
  std::vector<PlacedRotation> rotations_;
  std::vector<Vector> r_cols_;
  Vector t_;
};

/// Free-function spellings of the state machine API.
inline double qr_append_column(HessenbergQr& state, const Vector& column, double rhs_entry = 0.0) {
  return state.append_column(column, rhs_entry);
}
inline std::optional<Vector> qr_solve(const HessenbergQr& state) { return state.solve(); }
inline std::pair<double, double> banded_qr_append(BandedQr& state, const Vector& column) {
  return state.append_column(column);
}

}  // namespace rsmar
