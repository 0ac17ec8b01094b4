// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace rsmar {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

/// Thrown when operand sizes do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Triplet {
  Index row;
  Index col;
  double value;
};

/// Compressed-row sparse matrix. Immutable once built; column indices are
/// strictly increasing within each row and duplicate triplets are summed.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);
  static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);
  static SparseMatrix identity(Index n);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  std::size_t nonzeros() const { return values_.size(); }

  const std::vector<Index>& row_offsets() const { return row_offsets_; }
  const std::vector<Index>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  /// y = A x. Throws DimensionError when x.size() != cols().
  Vector apply(const Vector& x) const;

  DenseMatrix to_dense() const;
  SparseMatrix scaled(double factor) const;
  double max_abs() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Index> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> values_;
};

Vector matvec(const SparseMatrix& a, const Vector& v);
Vector matvec(const DenseMatrix& a, const Vector& v);
double norm2(const Vector& v);
double dot(const Vector& u, const Vector& v);

/// Square operator seen only through its action. Copies share the underlying
/// matrix; apply() is const and may be called from several threads.
class LinearOperator {
 public:
  using ApplyFn = std::function<Vector(const Vector&)>;

  LinearOperator(Index n, ApplyFn fn);
  explicit LinearOperator(SparseMatrix a);
  explicit LinearOperator(DenseMatrix a);

  Index size() const { return n_; }
  Vector apply(const Vector& v) const;
  Vector operator()(const Vector& v) const { return apply(v); }

 private:
  Index n_;
  ApplyFn fn_;
};

struct SolveOptions {
  double tol = 1e-10;
  int maxit = 1000;
  std::optional<int> restart;
  double breakdown_tol = 1e-13;
  bool reorthogonalize = false;
  bool record_explicit = true;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class Termination { converged, happy_breakdown, singular_final_system, maxit };

/// Which stopping monitor ended the run.
enum class StopMonitor { none, residual, aresidual };

std::string_view to_string(Termination t);
std::string_view to_string(StopMonitor m);

struct SolveReport {
  Vector solution;
  std::optional<Vector> lifted_solution;
  /// ||r_k|| and ||A r_k|| for k = 0..iterations (explicit or estimated, see
  /// `explicit_histories`).
  std::vector<double> residual_history;
  std::vector<double> aresidual_history;
  /// The method's own recurrence value for the monitored norm
  /// (||r_k|| for GMRES/RRGMRES/MINRES, ||A r_k|| otherwise).
  std::vector<double> estimate_history;
  /// Cumulative operator applications made by the algorithm after each
  /// iterate; monitoring products are not counted.
  std::vector<std::int64_t> matvec_history;
  std::int64_t matvec_count = 0;
  int iterations = 0;
  Termination termination = Termination::maxit;
  StopMonitor monitor = StopMonitor::none;
  std::optional<int> detected_ell;
  bool explicit_histories = true;
  /// beta_1 = ||r_0|| and hat beta_1 = ||A r_0||.
  double initial_residual = 0.0;
  double initial_aresidual = 0.0;
};

}  // namespace rsmar
