#include "admd/sketching.hpp"

#include "admd/errors.hpp"
#include "admd/random.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <string>

namespace admd {

namespace {

void check_sketch_dims(Index m, Index a) {
  if (m < 1) throw ParameterError("sketch input dimension must be positive");
  if (a < 1) throw ParameterError("sketch dimension must be at least 1");
  if (a > m) {
    throw ParameterError("sketch dimension " + std::to_string(a) + " exceeds state dimension " +
                         std::to_string(m));
  }
}

}  // namespace

std::string to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::Gaussian:
      return "gaussian";
    case SketchKind::Achlioptas:
      return "achlioptas";
    case SketchKind::RowSample:
      return "rowsample";
  }
  return "unknown";
}

Matrix ProjectionOperator::dense() const {
  if (kind_ != SketchKind::RowSample) return matrix_;
  Matrix out = Matrix::Zero(sketch_dim_, input_dim_);
  for (Index i = 0; i < sketch_dim_; ++i) out(i, rows_[static_cast<std::size_t>(i)]) = 1.0;
  return out;
}

ProjectionOperator gaussian_sketch(Index m, Index a, std::uint64_t seed) {
  check_sketch_dims(m, a);
  ProjectionOperator p(SketchKind::Gaussian, m, a, 0, seed);
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(a));
  p.matrix_.resize(a, m);
  for (Index i = 0; i < a; ++i)
    for (Index j = 0; j < m; ++j) p.matrix_(i, j) = scale * rng.normal();
  return p;
}

ProjectionOperator achlioptas_sketch(Index m, Index a, int s, std::uint64_t seed) {
  if (s != 1 && s != 3) {
    throw ParameterError("Achlioptas sparsity s must be 1 or 3, got " + std::to_string(s));
  }
  check_sketch_dims(m, a);
  ProjectionOperator p(SketchKind::Achlioptas, m, a, s, seed);
  Rng rng(seed);
  const double value = std::sqrt(static_cast<double>(s) / static_cast<double>(a));
  const double tail = 1.0 / (2.0 * s);
  p.matrix_.resize(a, m);
  for (Index i = 0; i < a; ++i) {
    for (Index j = 0; j < m; ++j) {
      const double u = rng.uniform();
      p.matrix_(i, j) = u < tail ? -value : (u < 2.0 * tail ? value : 0.0);
    }
  }
  return p;
}

ProjectionOperator row_sample(Index m, Index a, std::uint64_t seed) {
  check_sketch_dims(m, a);
  ProjectionOperator p(SketchKind::RowSample, m, a, 0, seed);
  Rng rng(seed);
  // Partial Fisher-Yates: the first a slots end up a uniform sample.
  std::vector<Index> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < a; ++i) {
    const auto j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(m - i))) + i;
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(a));
  p.rows_ = std::move(pool);
  return p;
}

Matrix apply_sketch(const ProjectionOperator& p, const Eigen::Ref<const Matrix>& x) {
  if (x.rows() != p.input_dim()) {
    throw DimensionError("sketch expects " + std::to_string(p.input_dim()) + " rows, got " +
                         std::to_string(x.rows()));
  }
  if (p.kind() != SketchKind::RowSample) return p.matrix() * x;
  Matrix out(p.sketch_dim(), x.cols());
  for (Index i = 0; i < p.sketch_dim(); ++i) out.row(i) = x.row(p.rows()[static_cast<std::size_t>(i)]);
  return out;
}

ComplexMatrix lift_modes(const Eigen::Ref<const Matrix>& x2_full, const SvdFactors& sketched_svd,
                         const Eigen::Ref<const ComplexMatrix>& eigvecs) {
  const Index r = sketched_svd.rank;
  if (sketched_svd.V.rows() != x2_full.cols() || sketched_svd.V.cols() != r ||
      eigvecs.rows() != r) {
    throw DimensionError("lift_modes: factor shapes do not match the snapshot block");
  }
  Matrix basis = x2_full * sketched_svd.V;
  basis *= sketched_svd.sigma.head(r).cwiseInverse().asDiagonal();
  return basis.cast<Complex>() * eigvecs;
}

DmdModel fit_sketched_dmd_pair(const Eigen::Ref<const Matrix>& x1,
                               const Eigen::Ref<const Matrix>& x2, const ProjectionOperator& p,
                               double dt, const RankRule& rule, Index state_rows, Index delay) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw DimensionError("snapshot pair shapes differ");
  }
  const Matrix y1 = apply_sketch(p, x1);
  const Matrix y2 = apply_sketch(p, x2);

  const SvdFactors full = thin_svd(y1);
  const Index r = resolve_rank(rule, full.sigma, std::min(y1.rows(), y1.cols()));
  if (r == 0) throw DegenerateDataError("sketched snapshot block has zero numeric rank");
  const SvdFactors svd = full.truncated(r);

  const Matrix s = reduced_operator(y1, y2, svd);
  Eigen::EigenSolver<Matrix> eig(s, true);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the sketched operator failed");
  }
  ComplexMatrix modes = lift_modes(x2, svd, eig.eigenvectors());
  return assemble_model(std::move(modes), eig.eigenvalues(), x1.col(0), dt, state_rows, delay);
}

}  // namespace admd
