#include "admd/linalg.hpp"

#include "admd/errors.hpp"

#include <Eigen/SVD>

#include <string>

namespace admd {

void require_finite(const Eigen::Ref<const Matrix>& x, const char* what) {
  if (!x.allFinite()) {
    throw InputDomainError(std::string(what) + " contains non-finite entries");
  }
}

SnapshotMatrix::SnapshotMatrix(Matrix data, double dt) : data_(std::move(data)), dt_(dt) {
  if (data_.cols() < 2) {
    throw TooFewSnapshotsError("snapshot matrix needs at least 2 columns, got " +
                               std::to_string(data_.cols()));
  }
  if (data_.rows() < 1) {
    throw DimensionError("snapshot matrix has no rows");
  }
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw InputDomainError("time step must be positive and finite");
  }
  require_finite(data_, "snapshot matrix");
}

SvdFactors SvdFactors::truncated(Index r) const {
  if (r < 0 || r > rank) {
    throw DimensionError("cannot truncate SVD of rank " + std::to_string(rank) + " to " +
                         std::to_string(r));
  }
  return SvdFactors{U.leftCols(r), sigma.head(r), V.leftCols(r), r};
}

SvdFactors thin_svd(const Eigen::Ref<const Matrix>& x) {
  require_finite(x, "SVD input");
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdFactors out;
  out.U = svd.matrixU();
  out.sigma = svd.singularValues();
  out.V = svd.matrixV();
  out.rank = out.sigma.size();
  return out;
}

Vector singular_values(const Eigen::Ref<const Matrix>& x) {
  require_finite(x, "SVD input");
  if (x.size() == 0) return Vector();
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues();
}

Index count_above(const Vector& sigma, double eps_rel) {
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return 0;
  const double cut = eps_rel * sigma(0);
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

Index numeric_rank(const Eigen::Ref<const Matrix>& x, double eps_rel) {
  if (!(eps_rel >= 0.0)) throw InputDomainError("rank tolerance must be nonnegative");
  return count_above(singular_values(x), eps_rel);
}

}  // namespace admd
