// SPDX-License-Identifier: Apache-2.0

#include "rsmar/operators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rsmar {

namespace {

void require_same_size(Index a, Index b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}

}  // namespace

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("SparseMatrix: negative dimension");
  }
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw std::out_of_range("SparseMatrix: triplet (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    }
    if (!std::isfinite(t.value)) {
      throw std::invalid_argument("SparseMatrix: non-finite entry");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  for (std::size_t i = 0; i < triplets.size();) {
    const Index r = triplets[i].row;
    const Index c = triplets[i].col;
    double sum = 0.0;
    for (; i < triplets.size() && triplets[i].row == r && triplets[i].col == c; ++i) {
      sum += triplets[i].value;
    }
    m.col_indices_.push_back(c);
    m.values_.push_back(sum);
    ++m.row_offsets_[static_cast<std::size_t>(r) + 1];
  }
  for (std::size_t r = 0; r < static_cast<std::size_t>(rows); ++r) {
    m.row_offsets_[r + 1] += m.row_offsets_[r];
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
  std::vector<Triplet> trip;
  for (Index i = 0; i < dense.rows(); ++i) {
    for (Index j = 0; j < dense.cols(); ++j) {
      if (std::abs(dense(i, j)) > drop_tol) trip.push_back({i, j, dense(i, j)});
    }
  }
  return from_triplets(dense.rows(), dense.cols(), std::move(trip));
}

SparseMatrix SparseMatrix::identity(Index n) {
  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) trip.push_back({i, i, 1.0});
  return from_triplets(n, n, std::move(trip));
}

Vector SparseMatrix::apply(const Vector& x) const {
  require_same_size(x.size(), cols_, "SparseMatrix::apply");
  Vector y(rows_);
  for (Index r = 0; r < rows_; ++r) {
    double acc = 0.0;
    const auto begin = row_offsets_[static_cast<std::size_t>(r)];
    const auto end = row_offsets_[static_cast<std::size_t>(r) + 1];
    for (auto k = begin; k < end; ++k) {
      acc += values_[static_cast<std::size_t>(k)] * x[col_indices_[static_cast<std::size_t>(k)]];
    }
    y[r] = acc;
  }
  return y;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d = DenseMatrix::Zero(rows_, cols_);
  for (Index r = 0; r < rows_; ++r) {
    for (auto k = row_offsets_[static_cast<std::size_t>(r)];
         k < row_offsets_[static_cast<std::size_t>(r) + 1]; ++k) {
      d(r, col_indices_[static_cast<std::size_t>(k)]) = values_[static_cast<std::size_t>(k)];
    }
  }
  return d;
}

SparseMatrix SparseMatrix::scaled(double factor) const {
  SparseMatrix m = *this;
  for (auto& v : m.values_) v *= factor;
  return m;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Vector matvec(const SparseMatrix& a, const Vector& v) { return a.apply(v); }

Vector matvec(const DenseMatrix& a, const Vector& v) {
  require_same_size(v.size(), a.cols(), "matvec");
  return a * v;
}

double norm2(const Vector& v) { return v.norm(); }

double dot(const Vector& u, const Vector& v) {
  require_same_size(u.size(), v.size(), "dot");
  return u.dot(v);
}

LinearOperator::LinearOperator(Index n, ApplyFn fn) : n_(n), fn_(std::move(fn)) {
  if (!fn_) throw std::invalid_argument("LinearOperator: empty apply function");
}

LinearOperator::LinearOperator(SparseMatrix a) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw DimensionError("LinearOperator: matrix must be square");
  auto shared = std::make_shared<const SparseMatrix>(std::move(a));
  fn_ = [shared](const Vector& v) { return shared->apply(v); };
}

LinearOperator::LinearOperator(DenseMatrix a) : n_(a.rows()) {
  if (a.rows() != a.cols()) throw DimensionError("LinearOperator: matrix must be square");
  auto shared = std::make_shared<const DenseMatrix>(std::move(a));
  fn_ = [shared](const Vector& v) { return matvec(*shared, v); };
}

Vector LinearOperator::apply(const Vector& v) const {
  require_same_size(v.size(), n_, "LinearOperator::apply");
  return fn_(v);
}

void SolveOptions::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("SolveOptions: tol must be positive");
  if (maxit < 1) throw std::invalid_argument("SolveOptions: maxit must be >= 1");
  if (restart && *restart < 1) throw std::invalid_argument("SolveOptions: restart must be >= 1");
  if (!(breakdown_tol >= 0.0)) {
    throw std::invalid_argument("SolveOptions: breakdown_tol must be nonnegative");
  }
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::happy_breakdown: return "happy_breakdown";
    case Termination::singular_final_system: return "singular_final_system";
    case Termination::maxit: return "maxit";
  }
  return "unknown";
}

std::string_view to_string(StopMonitor m) {
  switch (m) {
    case StopMonitor::none: return "none";
    case StopMonitor::residual: return "residual";
    case StopMonitor::aresidual: return "aresidual";
  }
  return "unknown";
}

}  // namespace rsmar
