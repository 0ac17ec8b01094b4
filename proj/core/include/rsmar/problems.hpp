// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "rsmar/operators.hpp"

namespace rsmar {

/// Seeded generator used by every randomized construction.
///
/// The bit stream is std::mt19937_64 (fully specified by the C++ standard).
/// uniform() maps the top 53 bits to [0, 1); gaussian() is one Box-Muller
/// draw per call from two consecutive uniforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

Vector random_uniform_vector(Index n, Rng& rng);
Vector random_gaussian_vector(Index n, Rng& rng);
DenseMatrix random_gaussian_matrix(Index rows, Index cols, Rng& rng);
/// Q factor of a Gaussian matrix.
DenseMatrix random_orthogonal(Index n, Rng& rng);

/// Periodic convection-diffusion test problem on an m x m grid.
struct BvpSpec {
  int m = 100;
  double d = 10.0;

  double h() const { return 1.0 / m; }
  double alpha_plus() const { return 1.0 + d * h() / 2.0; }
  double alpha_minus() const { return 1.0 - d * h() / 2.0; }
};

enum class BvpRhsKind { consistent_random, inconsistent_xy };

/// m^2 x m^2 block matrix with T_m on the diagonal and identity blocks on
/// the periodic off-diagonals. Throws std::invalid_argument for m < 3.
SparseMatrix make_bvp_matrix(const BvpSpec& spec);

/// consistent_random: b = A u with u uniform on [0, 1) from `seed`.
/// inconsistent_xy: b_{(j-1)m+i} = (i + j) h for i, j = 1..m.
Vector make_bvp_rhs(const BvpSpec& spec, BvpRhsKind kind, std::uint64_t seed = 0);

struct RandomSpec {
  Index n = 20;
  Index rank = 15;
  double condition = 1e2;
  std::uint64_t seed = 0;

  void validate() const;
};

/// A together with its pseudoinverse in closed form.
struct GeneratedSystem {
  DenseMatrix a;
  DenseMatrix pinv;
};

/// A = U diag(C, 0) U^T with C = Q1 Sigma Q2^T and Sigma log-spaced from 1
/// down to 1/condition.
GeneratedSystem make_random_range_symmetric(const RandomSpec& spec);

/// A = U diag(Lambda, 0) U^T with |Lambda| log-spaced and random signs.
GeneratedSystem make_random_symmetric_singular(const RandomSpec& spec);

/// (M - M^T) / 2 for Gaussian M. Throws std::invalid_argument for even n.
DenseMatrix make_random_skew_singular(Index n, std::uint64_t seed);

/// Returns A / rho and rho = max |a_ij|. Throws std::invalid_argument for
/// the zero matrix.
std::pair<SparseMatrix, double> scale_max_abs(const SparseMatrix& a);

}  // namespace rsmar
