#pragma once

#include "admd/types.hpp"

#include <cstdint>
#include <numbers>

namespace admd {

/// Periodically forced double gyre on [0, 2] x [0, 1].
///
/// Column j is the vorticity at t_j = j * dt on an nx by ny node grid
/// (endpoints included), flattened with x varying fastest.
struct DoubleGyreParams {
  double amplitude = 0.1;
  double omega = 2.0 * std::numbers::pi / 10.0;
  double epsilon = 0.25;
  Index nx = 128;
  Index ny = 64;
  Index nt = 201;
  double dt = 0.1;
};

/// sin(k1 x - w1 t) e^{g1 t} + sin(k2 x - w2 t) e^{g2 t} on x in [0, x_max],
/// t in [0, t_max], endpoints included.
struct HiddenDynamicsParams {
  double k1 = 1.0, omega1 = 1.0, gamma1 = 1.0;
  double k2 = 0.4, omega2 = 3.7, gamma2 = -0.2;
  double x_max = 15.0;
  double t_max = 4.0;
  Index nx = 100;
  Index nt = 81;

  double dt() const { return t_max / static_cast<double>(nt - 1); }
};

/// Full-rank stand-in for a turbulent velocity record.
///
/// K traveling waves with amplitudes 1/sqrt(k) on a periodic grid of M points,
/// plus dense Gaussian noise of standard deviation noise_std * rms and
/// round(outlier_frac * M * N) spikes of +-outlier_mag * rms, where rms is
/// the root mean square of the clean wave field.
struct SurrogateParams {
  Index rows = 128;
  Index cols = 300;
  Index waves = 3;
  double dt = 0.1;
  double noise_std = 0.05;
  double outlier_frac = 0.002;
  double outlier_mag = 20.0;
  std::uint64_t seed = 1;
};

struct GyreVelocity {
  double u, v;
};

/// u = -dPsi/dy, v = dPsi/dx for Psi = A sin(pi f(x, t)) sin(pi y).
GyreVelocity double_gyre_velocity(const DoubleGyreParams& params, double x, double y, double t);

/// Analytic vorticity dv/dx - du/dy of the double gyre velocity field.
double double_gyre_vorticity_exact(const DoubleGyreParams& params, double x, double y, double t);

SnapshotMatrix double_gyre_vorticity(const DoubleGyreParams& params);
SnapshotMatrix hidden_dynamics(const HiddenDynamicsParams& params);
SnapshotMatrix surrogate_turbulence(const SurrogateParams& params);

/// The clean wave field of surrogate_turbulence (no noise, no outliers).
Matrix surrogate_clean_signal(const SurrogateParams& params);

}  // namespace admd
