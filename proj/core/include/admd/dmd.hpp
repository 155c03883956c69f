#pragma once

#include "admd/linalg.hpp"
#include "admd/types.hpp"

#include <utility>
#include <variant>

namespace admd {

/// Truncate at the numeric rank, sigma_i > eps_rel * sigma_1.
struct RankThreshold {
  double eps_rel = kDefaultRankTolerance;
};

/// Keep exactly r singular triplets.
struct FixedRank {
  Index r = 1;
};

using RankRule = std::variant<RankThreshold, FixedRank>;

/// Fitted exact-DMD model.
///
/// Modes may live in an augmented (delay or lifted) space of dimension
/// modes.rows(); reconstruction always returns the first state_rows entries,
/// which is the physical state.
struct DmdModel {
  ComplexMatrix modes;            // Phi, (q*M) x r
  ComplexVector discrete_eigs;    // mu_k
  ComplexVector continuous_eigs;  // omega_k = log(mu_k) / dt, principal branch
  ComplexVector amplitudes;       // b = pinv(Phi) * x_1
  double dt = 1.0;
  Index state_rows = 0;           // physical state dimension M
  Index delay = 1;                // q used to build the model

  Index rank() const noexcept { return discrete_eigs.size(); }
  Index augmented_rows() const noexcept { return modes.rows(); }
};

/// X1 = columns 1..N-1, X2 = columns 2..N.
std::pair<Matrix, Matrix> split_snapshots(const SnapshotMatrix& x);

/// S~ = U^T X2 V Sigma^-1 built from the truncated SVD of X1.
Matrix reduced_operator(const Eigen::Ref<const Matrix>& x1, const Eigen::Ref<const Matrix>& x2,
                        const SvdFactors& svd);

/// Exact DMD of a snapshot matrix.
DmdModel fit_dmd(const SnapshotMatrix& x, const RankRule& rule = RankThreshold{});

/// Exact DMD of an explicit snapshot pair (X2 one step ahead of X1).
///
/// Shared by the plain, delay and filtered paths; state_rows selects how many
/// leading rows reconstruct() returns.
DmdModel fit_dmd_pair(const Eigen::Ref<const Matrix>& x1, const Eigen::Ref<const Matrix>& x2,
                      double dt, const RankRule& rule, Index state_rows);

/// Resolves the rank rule against a singular spectrum.
Index resolve_rank(const RankRule& rule, const Vector& sigma, Index max_rank);

/// Completes a model from modes and eigenvalues: omega, b = pinv(Phi) x1 and
/// the deterministic ordering (|b| descending, then |mu| descending).
DmdModel assemble_model(ComplexMatrix modes, ComplexVector eigs,
                        const Eigen::Ref<const Vector>& x1, double dt, Index state_rows,
                        Index delay);

/// Principal-branch continuous eigenvalue, Im(omega dt) in (-pi, pi].
Complex continuous_eigenvalue(Complex mu, double dt);

/// Phi diag(exp(omega t)) b, truncated to the physical state rows.
ComplexVector reconstruct(const DmdModel& model, double t);

}  // namespace admd
