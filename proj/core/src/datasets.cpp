#include "admd/datasets.hpp"

#include "admd/errors.hpp"
#include "admd/random.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>
#include <vector>

namespace admd {

namespace {

constexpr double kPi = std::numbers::pi;

struct GyreTerms {
  double f, df, d2f;
};

// f(x, t) = eps sin(wt) x^2 + (1 - 2 eps sin(wt)) x and its x-derivatives.
GyreTerms gyre_terms(const DoubleGyreParams& p, double x, double t) {
  const double a = p.epsilon * std::sin(p.omega * t);
  const double b = 1.0 - 2.0 * a;
  return {a * x * x + b * x, 2.0 * a * x + b, 2.0 * a};
}

// Second order everywhere: central inside, one-sided three-point at the ends.
// `at(k)` reads the k-th sample along the differentiated axis.
template <typename At>
double derivative(At at, std::size_t i, std::size_t n, double h) {
  if (i == 0) return (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h);
  if (i == n - 1) return (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2.0 * h);
  return (at(i + 1) - at(i - 1)) / (2.0 * h);
}

void validate(const SurrogateParams& p) {
  if (p.rows < 2 || p.cols < 2) throw ParameterError("surrogate needs at least 2 x 2 entries");
  if (p.waves < 1) throw ParameterError("surrogate needs at least one wave");
  if (!(p.dt > 0.0)) throw ParameterError("surrogate dt must be positive");
  if (!(p.noise_std >= 0.0)) throw ParameterError("noise_std must be nonnegative");
  if (!(p.outlier_frac >= 0.0 && p.outlier_frac <= 1.0)) {
    throw ParameterError("outlier_frac must lie in [0, 1]");
  }
  if (!(p.outlier_mag >= 0.0)) throw ParameterError("outlier_mag must be nonnegative");
}

Matrix waves(const SurrogateParams& p, Rng& rng) {
  const Index m = p.rows;
  const Index n = p.cols;
  const auto max_wavenumber = static_cast<std::uint64_t>(std::max<Index>(1, m / 8));
  const double nyquist = kPi / p.dt;

  Matrix out = Matrix::Zero(m, n);
  for (Index k = 0; k < p.waves; ++k) {
    const double wavenumber = 1.0 + static_cast<double>(rng.below(max_wavenumber));
    const double frequency = (0.05 + 0.75 * rng.uniform()) * nyquist;
    const double phase = 2.0 * kPi * rng.uniform();
    const double amp = 1.0 / std::sqrt(static_cast<double>(k + 1));
    for (Index j = 0; j < n; ++j) {
      const double t = static_cast<double>(j) * p.dt;
      for (Index i = 0; i < m; ++i) {
        const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(m);
        out(i, j) += amp * std::sin(wavenumber * x - frequency * t + phase);
      }
    }
  }
  return out;
}

}  // namespace

GyreVelocity double_gyre_velocity(const DoubleGyreParams& p, double x, double y, double t) {
  const auto [f, df, d2f] = gyre_terms(p, x, t);
  const double a = p.amplitude;
  return {-kPi * a * std::sin(kPi * f) * std::cos(kPi * y),
          kPi * a * std::cos(kPi * f) * std::sin(kPi * y) * df};
}

double double_gyre_vorticity_exact(const DoubleGyreParams& p, double x, double y, double t) {
  const auto [f, df, d2f] = gyre_terms(p, x, t);
  const double a = p.amplitude;
  const double dv_dx =
      kPi * a * std::sin(kPi * y) * (-kPi * std::sin(kPi * f) * df * df + std::cos(kPi * f) * d2f);
  const double du_dy = kPi * kPi * a * std::sin(kPi * f) * std::sin(kPi * y);
  return dv_dx - du_dy;
}

SnapshotMatrix double_gyre_vorticity(const DoubleGyreParams& p) {
  if (p.nx < 3 || p.ny < 3) throw ParameterError("double gyre grid needs at least 3 x 3 nodes");
  if (p.nt < 2) throw TooFewSnapshotsError("double gyre needs at least 2 time steps");
  if (!(p.dt > 0.0)) throw ParameterError("double gyre dt must be positive");

  const auto nx = static_cast<std::size_t>(p.nx);
  const auto ny = static_cast<std::size_t>(p.ny);
  const double hx = 2.0 / static_cast<double>(nx - 1);
  const double hy = 1.0 / static_cast<double>(ny - 1);

  std::vector<double> u(nx * ny), v(nx * ny);
  Matrix out(p.nx * p.ny, p.nt);
  for (Index j = 0; j < p.nt; ++j) {
    const double t = static_cast<double>(j) * p.dt;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double y = static_cast<double>(iy) * hy;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const double x = static_cast<double>(ix) * hx;
        const std::size_t k = iy * nx + ix;
        const auto [uu, vv] = double_gyre_velocity(p, x, y, t);
        u[k] = uu;
        v[k] = vv;
      }
    }
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double* vrow = v.data() + iy * nx;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const double* ucol = u.data() + ix;
        const double dv_dx = derivative([&](std::size_t k) { return vrow[k]; }, ix, nx, hx);
        const double du_dy = derivative([&](std::size_t k) { return ucol[k * nx]; }, iy, ny, hy);
        out(static_cast<Index>(iy * nx + ix), j) = dv_dx - du_dy;
      }
    }
  }
  return SnapshotMatrix(std::move(out), p.dt);
}

SnapshotMatrix hidden_dynamics(const HiddenDynamicsParams& p) {
  if (p.nx < 2 || p.nt < 2) throw ParameterError("hidden dynamics needs nx, nt >= 2");
  if (!(p.x_max > 0.0) || !(p.t_max > 0.0)) throw ParameterError("ranges must be positive");
  Matrix out(p.nx, p.nt);
  for (Index j = 0; j < p.nt; ++j) {
    const double t = p.t_max * static_cast<double>(j) / static_cast<double>(p.nt - 1);
    const double g1 = std::exp(p.gamma1 * t);
    const double g2 = std::exp(p.gamma2 * t);
    for (Index i = 0; i < p.nx; ++i) {
      const double x = p.x_max * static_cast<double>(i) / static_cast<double>(p.nx - 1);
      out(i, j) = std::sin(p.k1 * x - p.omega1 * t) * g1 + std::sin(p.k2 * x - p.omega2 * t) * g2;
    }
  }
  return SnapshotMatrix(std::move(out), p.dt());
}

Matrix surrogate_clean_signal(const SurrogateParams& p) {
  validate(p);
  Rng rng(p.seed);
  return waves(p, rng);
}

SnapshotMatrix surrogate_turbulence(const SurrogateParams& p) {
  validate(p);
  Rng rng(p.seed);
  Matrix out = waves(p, rng);
  const double rms = std::sqrt(out.squaredNorm() / static_cast<double>(out.size()));

  if (p.noise_std > 0.0) {
    const double sd = p.noise_std * rms;
    for (Index j = 0; j < out.cols(); ++j)
      for (Index i = 0; i < out.rows(); ++i) out(i, j) += sd * rng.normal();
  }

  // Floyd's sampling of distinct linear positions, in draw order.
  const auto total = static_cast<std::uint64_t>(out.size());
  const auto count = static_cast<std::uint64_t>(std::llround(p.outlier_frac * static_cast<double>(total)));
  std::unordered_set<std::uint64_t> taken;
  std::vector<std::uint64_t> positions;
  positions.reserve(count);
  for (std::uint64_t j = total - count; j < total; ++j) {
    const std::uint64_t pick = rng.below(j + 1);
    const std::uint64_t chosen = taken.contains(pick) ? j : pick;
    taken.insert(chosen);
    positions.push_back(chosen);
  }
  for (const std::uint64_t pos : positions) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    out.data()[pos] += sign * p.outlier_mag * rms;
  }
  return SnapshotMatrix(std::move(out), p.dt);
}

}  // namespace admd
