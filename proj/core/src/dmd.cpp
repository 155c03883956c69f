#include "admd/dmd.hpp"

#include "admd/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace admd {

std::pair<Matrix, Matrix> split_snapshots(const SnapshotMatrix& x) {
  const Index n = x.cols();
  return {x.data().leftCols(n - 1), x.data().rightCols(n - 1)};
}

Matrix reduced_operator(const Eigen::Ref<const Matrix>& x1, const Eigen::Ref<const Matrix>& x2,
                        const SvdFactors& svd) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw DimensionError("snapshot pair shapes differ");
  }
  if (svd.U.rows() != x1.rows() || svd.V.rows() != x1.cols() || svd.U.cols() != svd.rank ||
      svd.V.cols() != svd.rank || svd.sigma.size() != svd.rank) {
    throw DimensionError("SVD factors do not match the snapshot pair");
  }
  for (Index i = 0; i < svd.rank; ++i) {
    if (!(svd.sigma(i) > 0.0)) {
      throw SingularTruncationError("retained singular value " + std::to_string(i + 1) +
                                    " is zero");
    }
  }
  Matrix s = (svd.U.transpose() * x2) * svd.V;
  s *= svd.sigma.cwiseInverse().asDiagonal();
  return s;
}

Index resolve_rank(const RankRule& rule, const Vector& sigma, Index max_rank) {
  if (const auto* fixed = std::get_if<FixedRank>(&rule)) {
    if (fixed->r < 1 || fixed->r > max_rank) {
      throw ParameterError("fixed rank " + std::to_string(fixed->r) + " outside [1, " +
                           std::to_string(max_rank) + "]");
    }
    return fixed->r;
  }
  const double eps = std::get<RankThreshold>(rule).eps_rel;
  if (!(eps >= 0.0)) throw InputDomainError("rank tolerance must be nonnegative");
  return count_above(sigma, eps);
}

Complex continuous_eigenvalue(Complex mu, double dt) {
  if (mu == Complex(0.0, 0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  // A signed zero imaginary part would put negative reals on the -pi side.
  if (mu.imag() == 0.0) mu = Complex(mu.real(), 0.0);
  return std::log(mu) / dt;
}

DmdModel assemble_model(ComplexMatrix modes, ComplexVector eigs,
                        const Eigen::Ref<const Vector>& x1, double dt, Index state_rows,
                        Index delay) {
  const Index r = eigs.size();
  if (modes.cols() != r || modes.rows() != x1.size()) {
    throw DimensionError("modes, eigenvalues and first snapshot are inconsistent");
  }
  // Fix each mode's free phase: largest-magnitude entry real and positive.
  for (Index k = 0; k < r; ++k) {
    Index peak = 0;
    modes.col(k).cwiseAbs().maxCoeff(&peak);
    const double mag = std::abs(modes(peak, k));
    if (mag > 0.0) modes.col(k) *= std::conj(modes(peak, k)) / mag;
  }
  const ComplexVector b = modes.completeOrthogonalDecomposition().solve(x1.cast<Complex>());

  std::vector<Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) {
    const double bi = std::abs(b(i)), bj = std::abs(b(j));
    if (bi != bj) return bi > bj;
    return std::abs(eigs(i)) > std::abs(eigs(j));
  });

  DmdModel model;
  model.modes.resize(modes.rows(), r);
  model.discrete_eigs.resize(r);
  model.continuous_eigs.resize(r);
  model.amplitudes.resize(r);
  for (Index k = 0; k < r; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    model.modes.col(k) = modes.col(src);
    model.discrete_eigs(k) = eigs(src);
    model.continuous_eigs(k) = continuous_eigenvalue(eigs(src), dt);
    model.amplitudes(k) = b(src);
  }
  model.dt = dt;
  model.state_rows = state_rows;
  model.delay = delay;
  return model;
}

DmdModel fit_dmd_pair(const Eigen::Ref<const Matrix>& x1, const Eigen::Ref<const Matrix>& x2,
                      double dt, const RankRule& rule, Index state_rows) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw DimensionError("snapshot pair shapes differ");
  }
  if (x1.cols() < 1) throw TooFewSnapshotsError("snapshot pair has no columns");
  if (state_rows < 1 || state_rows > x1.rows()) {
    throw DimensionError("state rows outside the snapshot dimension");
  }

  const SvdFactors full = thin_svd(x1);
  const Index r = resolve_rank(rule, full.sigma, std::min(x1.rows(), x1.cols()));
  if (r == 0) throw DegenerateDataError("first snapshot block has zero numeric rank");
  const SvdFactors svd = full.truncated(r);

  const Matrix s = reduced_operator(x1, x2, svd);
  Eigen::EigenSolver<Matrix> eig(s, /*computeEigenvectors=*/true);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of the reduced operator failed");
  }
  ComplexMatrix modes = svd.U.cast<Complex>() * eig.eigenvectors();
  return assemble_model(std::move(modes), eig.eigenvalues(), x1.col(0), dt, state_rows, 1);
}

DmdModel fit_dmd(const SnapshotMatrix& x, const RankRule& rule) {
  const auto [x1, x2] = split_snapshots(x);
  return fit_dmd_pair(x1, x2, x.dt(), rule, x.rows());
}

ComplexVector reconstruct(const DmdModel& model, double t) {
  const Index r = model.rank();
  ComplexVector coeff(r);
  for (Index k = 0; k < r; ++k) {
    coeff(k) = t == 0.0 ? model.amplitudes(k)
                        : model.amplitudes(k) * std::exp(model.continuous_eigs(k) * t);
  }
  return model.modes.topRows(model.state_rows) * coeff;
}

}  // namespace admd
