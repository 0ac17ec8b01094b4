// SPDX-License-Identifier: Apache-2.0

#include "rsmar/oracle.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rsmar {

namespace {

void check_cap(const DenseMatrix& a) {
  if (a.rows() > kOracleDenseCap || a.cols() > kOracleDenseCap) {
    throw OracleCapError("oracle: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " exceeds the dense cap of " + std::to_string(kOracleDenseCap));
  }
}

double resolve_tol(const DenseMatrix& a, std::optional<double> rank_tol) {
  return rank_tol.value_or(default_rank_tol(std::max(a.rows(), a.cols())));
}

int count_above(const Vector& sigma, double rel_tol) {
  if (sigma.size() == 0 || sigma[0] == 0.0) return 0;
  const double cut = rel_tol * sigma[0];
  int r = 0;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cut) ++r;
  }
  return r;
}

}  // namespace

double default_rank_tol(Index n) {
  return static_cast<double>(std::max<Index>(n, 1)) * std::numeric_limits<double>::epsilon();
}

int numerical_rank(const DenseMatrix& a, std::optional<double> rank_tol) {
  check_cap(a);
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<DenseMatrix> svd(a);
  return count_above(svd.singularValues(), resolve_tol(a, rank_tol));
}

DenseMatrix pseudoinverse(const DenseMatrix& a, std::optional<double> rank_tol) {
  check_cap(a);
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const int r = count_above(s, resolve_tol(a, rank_tol));
  const auto u = svd.matrixU().leftCols(r);
  const auto v = svd.matrixV().leftCols(r);
  return v * s.head(r).cwiseInverse().asDiagonal() * u.transpose();
}

Vector pseudoinverse_solve(const DenseMatrix& a, const Vector& b, std::optional<double> rank_tol) {
  check_cap(a);
  if (b.size() != a.rows()) throw DimensionError("pseudoinverse_solve: size mismatch");
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const int r = count_above(s, resolve_tol(a, rank_tol));
  const Vector coeffs = (svd.matrixU().leftCols(r).transpose() * b).cwiseQuotient(s.head(r));
  return svd.matrixV().leftCols(r) * coeffs;
}

int index_of(const DenseMatrix& a, std::optional<double> rank_tol) {
  check_cap(a);
  if (a.rows() != a.cols()) throw DimensionError("index_of: matrix must be square");
  const Index n = a.rows();
  DenseMatrix power = DenseMatrix::Identity(n, n);
  int prev_rank = static_cast<int>(n);
  for (int alpha = 0; alpha <= n; ++alpha) {
    DenseMatrix next = a * power;
    const double scale = next.norm();
    if (scale > 0.0) next /= scale;  // rank is scale invariant
    const int rank = scale > 0.0 ? numerical_rank(next, rank_tol) : 0;
    if (rank == prev_rank) return alpha;
    prev_rank = rank;
    power = next;
  }
  return static_cast<int>(n);
}

bool is_range_symmetric(const DenseMatrix& a, double tol, std::optional<double> rank_tol) {
  check_cap(a);
  if (a.rows() != a.cols()) return false;
  Eigen::BDCSVD<DenseMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = count_above(svd.singularValues(), resolve_tol(a, rank_tol));
  const DenseMatrix u = svd.matrixU().leftCols(r);
  const DenseMatrix v = svd.matrixV().leftCols(r);
  const DenseMatrix diff = u * u.transpose() - v * v.transpose();
  if (diff.size() == 0) return true;
  Eigen::BDCSVD<DenseMatrix> dsvd(diff);
  return dsvd.singularValues()[0] <= tol;
}

int krylov_max_dim(const DenseMatrix& a, const Vector& v, double tol) {
  check_cap(a);
  const Index n = a.rows();
  const double vnorm = v.norm();
  if (vnorm == 0.0) return 0;
  Eigen::BDCSVD<DenseMatrix> svd(a);
  const double anorm = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
  if (anorm == 0.0) return 1;

  // Columns spanning K_k: v, then A applied to the newest orthonormal
  // direction. Each trial is refactored from scratch with Householder QR.
  DenseMatrix cols(n, 1);
  cols.col(0) = v / vnorm;
  int dim = 1;
  while (dim < n) {
    Eigen::HouseholderQR<DenseMatrix> qr(cols);
    const Vector q = qr.householderQ() * Vector::Unit(n, dim - 1);
    DenseMatrix trial(n, dim + 1);
    trial << cols, a * q;
    Eigen::HouseholderQR<DenseMatrix> tqr(trial);
    const double fresh = std::abs(tqr.matrixQR()(dim, dim));
    if (fresh <= tol * anorm) break;
    cols = std::move(trial);
    ++dim;
  }
  return dim;
}

double cond_number(const DenseMatrix& m, std::optional<double> rank_tol) {
  check_cap(m);
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("cond_number: zero matrix");
  }
  Eigen::BDCSVD<DenseMatrix> svd(m);
  const Vector& s = svd.singularValues();
  const int r = count_above(s, resolve_tol(m, rank_tol));
  return s[0] / s[r - 1];
}

OracleResult run_oracle(const DenseMatrix& a, const Vector& b) {
  OracleResult out;
  out.pseudo_solution = pseudoinverse_solve(a, b);
  out.index = index_of(a);
  out.range_symmetric = is_range_symmetric(a);
  out.kappa = cond_number(a);
  out.rank = numerical_rank(a);
  return out;
}

}  // namespace rsmar
