#pragma once

#include "admd/types.hpp"

namespace admd {

/// sign(x) * max(|x| - tau, 0).
double soft_threshold(double x, double tau);
Matrix soft_threshold(const Eigen::Ref<const Matrix>& x, double tau);

/// U diag(soft_threshold(sigma, tau)) V^T; the nuclear-norm proximal map.
Matrix singular_value_threshold(const Eigen::Ref<const Matrix>& x, double tau);

/// Inexact augmented Lagrange multiplier settings for robust PCA.
///
/// The sparse weight is lambda / sqrt(max(M, N)) and is always derived from
/// lambda and the data shape, never stored. mu0 <= 0 selects 1.25 / sigma_1.
struct RpcaParams {
  double lambda = 1.0;
  double mu0 = 0.0;
  double rho = 1.5;
  double tol = 1e-7;
  int max_iter = 1000;

  double sparse_weight(Index rows, Index cols) const;
  void validate() const;
};

struct RpcaResult {
  Matrix low_rank;
  Matrix sparse;
  int iterations = 0;
  double residual = 0.0;  // ||X - L - S||_F / ||X||_F
  bool converged = false;
};

/// Robust PCA, min ||L||_* + lambda0 ||S||_1 s.t. X = L + S.
///
/// Never throws on non-convergence: the best iterate seen is returned with
/// converged = false.
RpcaResult rpca_ialm(const Eigen::Ref<const Matrix>& x, const RpcaParams& params = {});

/// Spatial DFT filter applied to every column independently.
///
/// Coefficients below tau_rel times the column's largest coefficient
/// magnitude are zeroed, pairwise with their conjugate partner so the
/// inverse stays real.
struct DftFilterPolicy {
  double tau_rel = 1e-3;

  void validate() const;
};

Matrix dft_filter(const Eigen::Ref<const Matrix>& x, const DftFilterPolicy& policy = {});

}  // namespace admd
