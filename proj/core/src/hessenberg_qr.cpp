// SPDX-License-Identifier: Apache-2.0

#include "rsmar/hessenberg_qr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rsmar {

Givens Givens::zeroing(double x, double y) {
  const double r = std::hypot(x, y);
  if (r == 0.0) return {1.0, 0.0};
  return {x / r, y / r};
}

std::optional<Vector> solve_upper(const DenseMatrix& r, const Vector& rhs, int k,
                                  double singular_tol) {
  if (k < 0 || k > r.cols() || k > r.rows() || k > rhs.size()) {
    throw DimensionError("solve_upper: block size out of range");
  }
  if (k == 0) return Vector(0);
  const auto diag = r.diagonal().head(k).cwiseAbs();
  if (diag.minCoeff() <= singular_tol * diag.maxCoeff() || diag.maxCoeff() == 0.0) {
    return std::nullopt;
  }
  Vector z(k);
  for (int i = k - 1; i >= 0; --i) {
    double acc = rhs[i];
    for (int j = i + 1; j < k; ++j) acc -= r(i, j) * z[j];
    z[i] = acc / r(i, i);
  }
  return z;
}

HessenbergQr::HessenbergQr(double rhs_norm) : rhs_norm_(rhs_norm), t_(Vector::Constant(1, rhs_norm)) {}

double HessenbergQr::append_column(const Vector& column, double rhs_entry) {
  const int k = cols();
  if (column.size() != k + 2) {
    throw DimensionError("HessenbergQr: expected column of length " + std::to_string(k + 2) +
                         ", got " + std::to_string(column.size()));
  }
  Vector col = column;
  for (int i = 0; i < k; ++i) rotations_[static_cast<std::size_t>(i)].apply(col[i], col[i + 1]);
  const Givens g = Givens::zeroing(col[k], col[k + 1]);
  g.apply(col[k], col[k + 1]);
  col[k + 1] = 0.0;
  rotations_.push_back(g);
  r_cols_.push_back(col.head(k + 1));

  t_.conservativeResize(k + 2);
  t_[k + 1] = rhs_entry;
  g.apply(t_[k], t_[k + 1]);
  return std::abs(t_[k + 1]);
}

DenseMatrix HessenbergQr::r() const {
  const int k = cols();
  DenseMatrix r = DenseMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) r.col(j).head(j + 1) = r_cols_[static_cast<std::size_t>(j)];
  return r;
}

double HessenbergQr::last_diagonal() const {
  if (r_cols_.empty()) return 0.0;
  const auto& c = r_cols_.back();
  return std::abs(c[c.size() - 1]);
}

std::optional<Vector> HessenbergQr::solve(std::optional<int> k, double singular_tol) const {
  const int n = k.value_or(cols());
  if (n < 0 || n > cols()) throw std::out_of_range("HessenbergQr::solve: bad column count");
  return solve_upper(r(), t_, n, singular_tol);
}

Vector HessenbergQr::apply_q(Vector y) const {
  if (y.size() != cols() + 1) throw DimensionError("HessenbergQr::apply_q: wrong length");
  for (int i = cols() - 1; i >= 0; --i) {
    rotations_[static_cast<std::size_t>(i)].apply_transpose(y[i], y[i + 1]);
  }
  return y;
}

Vector HessenbergQr::apply_qt(Vector y) const {
  if (y.size() != cols() + 1) throw DimensionError("HessenbergQr::apply_qt: wrong length");
  for (int i = 0; i < cols(); ++i) rotations_[static_cast<std::size_t>(i)].apply(y[i], y[i + 1]);
  return y;
}

BandedQr::BandedQr(double a, double b) : t_(2) { t_ << a, b; }

std::pair<double, double> BandedQr::append_column(const Vector& column) {
  const int k = cols();
  if (column.size() != k + 3) {
    throw DimensionError("BandedQr: expected column of length " + std::to_string(k + 3) +
                         ", got " + std::to_string(column.size()));
  }
  Vector col = column;
  for (const auto& pr : rotations_) {
    if (pr.row + 1 < col.size()) pr.g.apply(col[pr.row], col[pr.row + 1]);
  }
  t_.conservativeResize(k + 3);
  t_[k + 2] = 0.0;

  const Givens lower = Givens::zeroing(col[k + 1], col[k + 2]);
  lower.apply(col[k + 1], col[k + 2]);
  lower.apply(t_[k + 1], t_[k + 2]);
  const Givens upper = Givens::zeroing(col[k], col[k + 1]);
  upper.apply(col[k], col[k + 1]);
  upper.apply(t_[k], t_[k + 1]);
  rotations_.push_back({k + 1, lower});
  rotations_.push_back({k, upper});

  r_cols_.push_back(col.head(k + 1));
  return {std::abs(t_[k + 1]), std::abs(t_[k + 2])};
}

double BandedQr::residual() const {
  const int k = cols();
  return std::hypot(t_[k], t_[k + 1]);
}

DenseMatrix BandedQr::r() const {
  const int k = cols();
  DenseMatrix r = DenseMatrix::Zero(k, k);
  for (int j = 0; j < k; ++j) r.col(j).head(j + 1) = r_cols_[static_cast<std::size_t>(j)];
  return r;
}

std::optional<Vector> BandedQr::solve(double singular_tol) const {
  return solve_upper(r(), t_, cols(), singular_tol);
}

Vector BandedQr::apply_q(Vector y) const {
  if (y.size() != cols() + 2) throw DimensionError("BandedQr::apply_q: wrong length");
  for (auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) {
    it->g.apply_transpose(y[it->row], y[it->row + 1]);
  }
  return y;
}

}  // namespace rsmar
