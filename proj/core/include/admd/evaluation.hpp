#pragma once

#include "admd/dmd.hpp"

#include <optional>
#include <vector>

namespace admd {

/// ||Re(x_pred) - x_true||_2 / ||x_true||_2; empty when x_true is zero.
std::optional<double> relative_error(const Eigen::Ref<const ComplexVector>& x_pred,
                                     const Eigen::Ref<const Vector>& x_true);

/// Relative error of the model at every snapshot time t_j = j * dt.
std::vector<std::optional<double>> error_series(const DmdModel& model, const SnapshotMatrix& x);

/// Largest defined entry of a series (empty if none is defined).
std::optional<double> max_error(const std::vector<std::optional<double>>& series);

struct SpectrumReport {
  struct Discrete {
    double re, im, abs;
  };
  struct Continuous {
    double re, im;
  };
  std::vector<Discrete> discrete;
  std::vector<Continuous> continuous;
  std::vector<double> amplitudes;  // |b_k|
};

SpectrumReport spectrum_report(const DmdModel& model);

/// All singular values of x, descending.
std::vector<double> singular_spectrum(const Eigen::Ref<const Matrix>& x);

}  // namespace admd
