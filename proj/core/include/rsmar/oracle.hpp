// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <stdexcept>

#include "rsmar/operators.hpp"

namespace rsmar {

/// Dense reference computations. Every routine takes a rank tolerance that
/// is relative to the largest singular value; the default is n * eps.

inline constexpr Index kOracleDenseCap = 2000;

class OracleCapError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct OracleResult {
  Vector pseudo_solution;
  int index = 0;
  bool range_symmetric = false;
  double kappa = 0.0;
  int rank = 0;
};

double default_rank_tol(Index n);

/// Number of singular values above rank_tol * sigma_max.
int numerical_rank(const DenseMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// A^+ b. Throws OracleCapError above kOracleDenseCap rows.
Vector pseudoinverse_solve(const DenseMatrix& a, const Vector& b,
                           std::optional<double> rank_tol = std::nullopt);

/// A^+ as a dense matrix.
DenseMatrix pseudoinverse(const DenseMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// Smallest alpha >= 0 with rank(A^{alpha+1}) = rank(A^alpha).
int index_of(const DenseMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// Compares the orthogonal projectors onto range(A) and range(A^T) in the
/// spectral norm.
bool is_range_symmetric(const DenseMatrix& a, double tol = 1e-8,
                        std::optional<double> rank_tol = std::nullopt);

/// Largest k with rank [v, A v, ..., A^{k-1} v] = k. Each new direction is
/// accepted when its component orthogonal to the current span exceeds
/// tol * ||A||_2. Returns 0 for v = 0.
int krylov_max_dim(const DenseMatrix& a, const Vector& v, double tol = 1e-8);

/// sigma_max / smallest singular value above rank_tol * sigma_max. Throws
/// std::invalid_argument for the zero matrix.
double cond_number(const DenseMatrix& m, std::optional<double> rank_tol = std::nullopt);

/// All of the above for a square system.
OracleResult run_oracle(const DenseMatrix& a, const Vector& b);

}  // namespace rsmar
