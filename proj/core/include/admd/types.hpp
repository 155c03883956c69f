#pragma once

#include <Eigen/Dense>

#include <complex>

namespace admd {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// M x N real data, one column per time instant, uniformly spaced by dt.
///
/// Construction enforces N >= 2, dt > 0 and finite entries, so every
/// downstream routine may rely on them.
class SnapshotMatrix {
 public:
  SnapshotMatrix(Matrix data, double dt);

  const Matrix& data() const noexcept { return data_; }
  double dt() const noexcept { return dt_; }
  Index rows() const noexcept { return data_.rows(); }
  Index cols() const noexcept { return data_.cols(); }

  /// Time of column j (zero based); the first snapshot sits at t = 0.
  double time(Index j) const noexcept { return static_cast<double>(j) * dt_; }

 private:
  Matrix data_;
  double dt_;
};

/// Throws InputDomainError if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& x, const char* what);

}  // namespace admd
