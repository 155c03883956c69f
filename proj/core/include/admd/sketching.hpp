#pragma once

#include "admd/dmd.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace admd {

enum class SketchKind { Gaussian, Achlioptas, RowSample };

std::string to_string(SketchKind kind);

/// An a x M compression of the state dimension.
///
/// Gaussian and Achlioptas operators hold a dense matrix scaled by 1/sqrt(a)
/// so that E[R^T R] = I. RowSample holds the selected row indices instead.
class ProjectionOperator {
 public:
  SketchKind kind() const noexcept { return kind_; }
  Index input_dim() const noexcept { return input_dim_; }
  Index sketch_dim() const noexcept { return sketch_dim_; }
  int sparsity() const noexcept { return sparsity_; }  // Achlioptas s, else 0
  std::uint64_t seed() const noexcept { return seed_; }

  /// Dense a x M matrix; empty for RowSample.
  const Matrix& matrix() const noexcept { return matrix_; }
  /// Selected rows in extraction order; empty for dense kinds.
  const std::vector<Index>& rows() const noexcept { return rows_; }

  /// Materialises the operator as a dense a x M matrix (selector rows for
  /// RowSample).
  Matrix dense() const;

  friend ProjectionOperator gaussian_sketch(Index m, Index a, std::uint64_t seed);
  friend ProjectionOperator achlioptas_sketch(Index m, Index a, int s, std::uint64_t seed);
  friend ProjectionOperator row_sample(Index m, Index a, std::uint64_t seed);

 private:
  ProjectionOperator(SketchKind kind, Index m, Index a, int s, std::uint64_t seed)
      : kind_(kind), input_dim_(m), sketch_dim_(a), sparsity_(s), seed_(seed) {}

  SketchKind kind_;
  Index input_dim_;
  Index sketch_dim_;
  int sparsity_;
  std::uint64_t seed_;
  Matrix matrix_;
  std::vector<Index> rows_;
};

/// Entries i.i.d. N(0, 1/a).
ProjectionOperator gaussian_sketch(Index m, Index a, std::uint64_t seed);

/// Entries sqrt(s/a) * {-1, 0, +1} with probabilities 1/(2s), 1 - 1/s, 1/(2s).
ProjectionOperator achlioptas_sketch(Index m, Index a, int s, std::uint64_t seed);

/// a distinct rows drawn uniformly without replacement.
ProjectionOperator row_sample(Index m, Index a, std::uint64_t seed);

/// R X, or row extraction for RowSample.
Matrix apply_sketch(const ProjectionOperator& p, const Eigen::Ref<const Matrix>& x);

/// Full-space modes from a sketched fit: Phi = X2 V_c Sigma_c^-1 W.
ComplexMatrix lift_modes(const Eigen::Ref<const Matrix>& x2_full, const SvdFactors& sketched_svd,
                         const Eigen::Ref<const ComplexMatrix>& eigvecs);

/// Compressed DMD: fit on (R X1, R X2), then lift the modes back with X2.
///
/// The rank rule applies to the sketched X1. The amplitude fit uses the
/// unsketched first column of x1.
DmdModel fit_sketched_dmd_pair(const Eigen::Ref<const Matrix>& x1,
                               const Eigen::Ref<const Matrix>& x2, const ProjectionOperator& p,
                               double dt, const RankRule& rule, Index state_rows,
                               Index delay = 1);

}  // namespace admd
