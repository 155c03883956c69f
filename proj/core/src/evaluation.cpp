#include "admd/evaluation.hpp"

#include "admd/errors.hpp"
#include "admd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace admd {

std::optional<double> relative_error(const Eigen::Ref<const ComplexVector>& x_pred,
                                     const Eigen::Ref<const Vector>& x_true) {
  if (x_pred.size() != x_true.size()) {
    throw DimensionError("prediction and reference have different lengths");
  }
  const double denom = x_true.norm();
  if (denom == 0.0) return std::nullopt;
  return (x_pred.real() - x_true).norm() / denom;
}

std::vector<std::optional<double>> error_series(const DmdModel& model, const SnapshotMatrix& x) {
  if (model.state_rows != x.rows()) {
    throw DimensionError("model state dimension does not match the data");
  }
  std::vector<std::optional<double>> out;
  out.reserve(static_cast<std::size_t>(x.cols()));
  for (Index j = 0; j < x.cols(); ++j) {
    out.push_back(relative_error(reconstruct(model, x.time(j)), x.data().col(j)));
  }
  return out;
}

std::optional<double> max_error(const std::vector<std::optional<double>>& series) {
  std::optional<double> best;
  for (const auto& e : series) {
    if (!e) continue;
    // NaN propagates: a blown-up reconstruction must not look like a small error.
    if (!best || std::isnan(*e) || *e > *best) best = e;
    if (std::isnan(*best)) break;
  }
  return best;
}

SpectrumReport spectrum_report(const DmdModel& model) {
  SpectrumReport rep;
  const Index r = model.rank();
  rep.discrete.reserve(static_cast<std::size_t>(r));
  rep.continuous.reserve(static_cast<std::size_t>(r));
  rep.amplitudes.reserve(static_cast<std::size_t>(r));
  for (Index k = 0; k < r; ++k) {
    const Complex mu = model.discrete_eigs(k);
    const Complex om = model.continuous_eigs(k);
    rep.discrete.push_back({mu.real(), mu.imag(), std::abs(mu)});
    rep.continuous.push_back({om.real(), om.imag()});
    rep.amplitudes.push_back(std::abs(model.amplitudes(k)));
  }
  return rep;
}

std::vector<double> singular_spectrum(const Eigen::Ref<const Matrix>& x) {
  const Vector s = singular_values(x);
  return {s.data(), s.data() + s.size()};
}

}  // namespace admd
