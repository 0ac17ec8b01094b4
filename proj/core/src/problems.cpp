// SPDX-License-Identifier: Apache-2.0

#include "rsmar/problems.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rsmar {

namespace {

// Logarithmically spaced values from 1 down to 1/condition.
Vector log_spaced(Index count, double condition) {
  Vector s(count);
  for (Index i = 0; i < count; ++i) {
    const double frac = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
    s[i] = std::pow(condition, -frac);
  }
  return s;
}

}  // namespace

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector random_uniform_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.uniform();
  return v;
}

Vector random_gaussian_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.gaussian();
  return v;
}

DenseMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng) {
  DenseMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  }
  return m;
}

DenseMatrix random_orthogonal(Index n, Rng& rng) {
  Eigen::HouseholderQR<DenseMatrix> qr(random_gaussian_matrix(n, n, rng));
  return qr.householderQ() * DenseMatrix::Identity(n, n);
}

SparseMatrix make_bvp_matrix(const BvpSpec& spec) {
  const int m = spec.m;
  if (m < 3) throw std::invalid_argument("make_bvp_matrix: m must be at least 3");
  const double ap = spec.alpha_plus();
  const double am = spec.alpha_minus();
  const Index n = static_cast<Index>(m) * m;
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(n) * 5);
  for (int blk = 0; blk < m; ++blk) {
    const Index base = static_cast<Index>(blk) * m;
    const Index left = static_cast<Index>((blk + m - 1) % m) * m;
    const Index right = static_cast<Index>((blk + 1) % m) * m;
    for (int i = 0; i < m; ++i) {
      const Index row = base + i;
      t.push_back({row, base + i, -4.0});
      t.push_back({row, base + (i + 1) % m, ap});
      t.push_back({row, base + (i + m - 1) % m, am});
      t.push_back({row, left + i, 1.0});
      t.push_back({row, right + i, 1.0});
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

Vector make_bvp_rhs(const BvpSpec& spec, BvpRhsKind kind, std::uint64_t seed) {
  const int m = spec.m;
  const Index n = static_cast<Index>(m) * m;
  if (kind == BvpRhsKind::consistent_random) {
    Rng rng(seed);
    return make_bvp_matrix(spec).apply(random_uniform_vector(n, rng));
  }
  Vector b(n);
  const double h = spec.h();
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= m; ++i) b[static_cast<Index>(j - 1) * m + (i - 1)] = (i + j) * h;
  }
  return b;
}

void RandomSpec::validate() const {
  if (n < 1 || rank < 1 || rank > n) {
    throw std::invalid_argument("RandomSpec: need 1 <= rank <= n");
  }
  if (!(condition >= 1.0)) throw std::invalid_argument("RandomSpec: condition must be >= 1");
}

GeneratedSystem make_random_range_symmetric(const RandomSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const DenseMatrix u = random_orthogonal(spec.n, rng).leftCols(spec.rank);
  const DenseMatrix q1 = random_orthogonal(spec.rank, rng);
  const DenseMatrix q2 = random_orthogonal(spec.rank, rng);
  const Vector sigma = log_spaced(spec.rank, spec.condition);
  const DenseMatrix c = q1 * sigma.asDiagonal() * q2.transpose();
  const DenseMatrix c_inv = q2 * sigma.cwiseInverse().asDiagonal() * q1.transpose();
  return {u * c * u.transpose(), u * c_inv * u.transpose()};
}

GeneratedSystem make_random_symmetric_singular(const RandomSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  const DenseMatrix u = random_orthogonal(spec.n, rng).leftCols(spec.rank);
  Vector lambda = log_spaced(spec.rank, spec.condition);
  for (Index i = 0; i < lambda.size(); ++i) {
    if (rng.uniform() < 0.5) lambda[i] = -lambda[i];
  }
  const DenseMatrix a = u * lambda.asDiagonal() * u.transpose();
  const DenseMatrix p = u * lambda.cwiseInverse().asDiagonal() * u.transpose();
  return {0.5 * (a + a.transpose()), 0.5 * (p + p.transpose())};
}

DenseMatrix make_random_skew_singular(Index n, std::uint64_t seed) {
  if (n < 1 || n % 2 == 0) {
    throw std::invalid_argument("make_random_skew_singular: n must be odd");
  }
  Rng rng(seed);
  const DenseMatrix m = random_gaussian_matrix(n, n, rng);
  return 0.5 * (m - m.transpose());
}

std::pair<SparseMatrix, double> scale_max_abs(const SparseMatrix& a) {
  const double rho = a.max_abs();
  if (rho == 0.0) throw std::invalid_argument("scale_max_abs: zero matrix");
  std::vector<Triplet> t;
  t.reserve(a.nonzeros());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index k = a.row_offsets()[static_cast<std::size_t>(r)];
         k < a.row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      t.push_back({r, a.col_indices()[kk], a.values()[kk] / rho});
    }
  }
  return {SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t)), rho};
}

}  // namespace rsmar
