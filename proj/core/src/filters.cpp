#include "admd/filters.hpp"

#include "admd/errors.hpp"
#include "admd/linalg.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace admd {

double soft_threshold(double x, double tau) {
  if (!(tau >= 0.0)) throw InputDomainError("shrinkage threshold must be nonnegative");
  const double mag = std::abs(x) - tau;
  if (mag <= 0.0) return 0.0;
  return std::copysign(mag, x);
}

Matrix soft_threshold(const Eigen::Ref<const Matrix>& x, double tau) {
  if (!(tau >= 0.0)) throw InputDomainError("shrinkage threshold must be nonnegative");
  return x.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag <= 0.0 ? 0.0 : std::copysign(mag, v);
  });
}

Matrix singular_value_threshold(const Eigen::Ref<const Matrix>& x, double tau) {
  if (!(tau >= 0.0)) throw InputDomainError("singular value threshold must be nonnegative");
  const SvdFactors svd = thin_svd(x);
  Index keep = 0;
  while (keep < svd.rank && svd.sigma(keep) > tau) ++keep;
  if (keep == 0) return Matrix::Zero(x.rows(), x.cols());
  const Vector shrunk = svd.sigma.head(keep).array() - tau;
  return svd.U.leftCols(keep) * shrunk.asDiagonal() * svd.V.leftCols(keep).transpose();
}

double RpcaParams::sparse_weight(Index rows, Index cols) const {
  return lambda / std::sqrt(static_cast<double>(std::max(rows, cols)));
}

void RpcaParams::validate() const {
  if (!(lambda > 0.0)) throw ParameterError("rpca lambda must be positive");
  if (!(rho > 1.0)) throw ParameterError("rpca penalty growth rho must exceed 1");
  if (!(tol > 0.0)) throw ParameterError("rpca tolerance must be positive");
  if (max_iter < 1) throw ParameterError("rpca max_iter must be at least 1");
  if (!std::isfinite(mu0)) throw ParameterError("rpca mu0 must be finite");
}

RpcaResult rpca_ialm(const Eigen::Ref<const Matrix>& x, const RpcaParams& params) {
  params.validate();
  require_finite(x, "rpca input");
  const Index m = x.rows();
  const Index n = x.cols();

  RpcaResult result;
  const double x_norm = x.norm();
  if (x_norm == 0.0) {
    result.low_rank = Matrix::Zero(m, n);
    result.sparse = Matrix::Zero(m, n);
    result.converged = true;
    return result;
  }

  const double lambda0 = params.sparse_weight(m, n);
  const double sigma1 = singular_values(x)(0);
  const double dual_scale = std::max(sigma1, x.cwiseAbs().maxCoeff() / lambda0);

  Matrix dual = x / dual_scale;
  Matrix low = Matrix::Zero(m, n);
  Matrix sparse = Matrix::Zero(m, n);
  double mu = params.mu0 > 0.0 ? params.mu0 : 1.25 / sigma1;
  const double mu_max = mu * 1e7;

  double best = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= params.max_iter; ++it) {
    low = singular_value_threshold(x - sparse + dual / mu, 1.0 / mu);
    sparse = soft_threshold(x - low + dual / mu, lambda0 / mu);
    const Matrix gap = x - low - sparse;
    dual += mu * gap;
    mu = std::min(params.rho * mu, mu_max);

    const double residual = gap.norm() / x_norm;
    result.iterations = it;
    if (residual < best) {
      best = residual;
      result.low_rank = low;
      result.sparse = sparse;
      result.residual = residual;
    }
    if (residual <= params.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

void DftFilterPolicy::validate() const {
  if (!(tau_rel >= 0.0 && tau_rel < 1.0)) {
    throw ParameterError("DFT filter threshold must lie in [0, 1)");
  }
}

Matrix dft_filter(const Eigen::Ref<const Matrix>& x, const DftFilterPolicy& policy) {
  policy.validate();
  require_finite(x, "DFT filter input");
  if (x.rows() < 2) throw DimensionError("DFT filter needs at least 2 rows");
  if (policy.tau_rel == 0.0) return x;

  const Index m = x.rows();
  const auto len = static_cast<std::size_t>(m);
  Eigen::FFT<double> fft;
  std::vector<double> column(len);
  std::vector<Complex> spectrum;
  std::vector<Complex> restored;
  std::vector<double> magnitude(len);
  Matrix out(m, x.cols());

  for (Index j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < len; ++i) column[i] = x(static_cast<Index>(i), j);
    fft.fwd(spectrum, column);

    double peak = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      magnitude[k] = std::abs(spectrum[k]);
      peak = std::max(peak, magnitude[k]);
    }
    const double cut = policy.tau_rel * peak;
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t partner = (len - k) % len;
      // A conjugate pair survives or dies together.
      if (std::max(magnitude[k], magnitude[partner]) < cut) spectrum[k] = Complex(0.0, 0.0);
    }

    fft.inv(restored, spectrum);
    for (std::size_t i = 0; i < len; ++i) out(static_cast<Index>(i), j) = restored[i].real();
  }
  return out;
}

}  // namespace admd
