#pragma once

#include "admd/types.hpp"

namespace admd {

/// Thin SVD X = U diag(sigma) V^T truncated to `rank` columns.
struct SvdFactors {
  Matrix U;      // M x r, orthonormal columns
  Vector sigma;  // r values, descending, positive after truncation
  Matrix V;      // n x r, orthonormal columns
  Index rank = 0;

  /// Keeps the leading r triplets.
  SvdFactors truncated(Index r) const;
};

/// Relative rank cut-off used throughout (applied as eps * sigma_1).
inline constexpr double kDefaultRankTolerance = 1e-12;

/// Thin SVD with every singular triplet kept (rank = min(M, n)).
SvdFactors thin_svd(const Eigen::Ref<const Matrix>& x);

/// All singular values of x, descending.
Vector singular_values(const Eigen::Ref<const Matrix>& x);

/// Number of sigma_i with sigma_i > eps_rel * sigma_1; 0 for a zero spectrum.
Index count_above(const Vector& sigma, double eps_rel);

/// Numeric rank of x relative to its largest singular value.
Index numeric_rank(const Eigen::Ref<const Matrix>& x, double eps_rel = kDefaultRankTolerance);

}  // namespace admd
