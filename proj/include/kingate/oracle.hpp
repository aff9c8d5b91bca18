#pragma once

// Time-domain integration of the atom's equations of motion, used as an
// independent check on the frequency-domain solution.
//
// The memory integrals of the excited-state equation have exponential kernels
// e^{-(kappa + i delta_p)(t - t')}, so each one is replaced by an auxiliary
// amplitude s_p with ds_p/dt = -(kappa + i delta_p) s_p + c_e. The drive is
// the incident pulse filtered by the same cavity Lorentzian and is carried by
// one more auxiliary amplitude b driven by the closed-form Gaussian pulse.

#include "kingate/core.hpp"

#include <vector>

namespace kingate {

struct TimeDomainState {
  double t = 0.0;
  Complex c_e;
  Complex s_h;
  Complex s_v;
  Complex drive;  // cavity-filtered incident field b(t)
};

struct OracleOptions {
  double lead_durations = 8.0;   // start at -lead_durations * T
  double trail_durations = 8.0;  // integrate at least to +trail_durations * T
  double dt = 0.0;               // sample spacing; 0 selects min(1/kappa, T)/50
  double tolerance = 1e-10;      // per-step local error bound (adaptive mode)
  bool adaptive = true;          // false: classical RK4 with step dt
  double decay_threshold = 1e-10;
  double max_tail = 5000.0;      // extra time allowed for the atom to decay
};

struct Trajectory {
  SystemParams params;  // as seen by the incident photon (h/v swapped for a V pulse)
  PulseSpec pulse;
  std::vector<TimeDomainState> samples;  // uniformly spaced by dt
  double dt = 0.0;
  double decay_threshold = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;

  double start() const { return samples.front().t; }
  double end() const { return samples.back().t; }
};

/// Integrates from -lead*T until the pulse has passed and every amplitude
/// has decayed below options.decay_threshold.
Trajectory integrate(const SystemParams& params, const PulseSpec& pulse,
                     const OracleOptions& options = {});

/// C~_e(nu) = int c_e(t) e^{i nu t} dt by trapezoidal quadrature over the samples.
Eigen::VectorXcd excited_spectrum_timedomain(const Trajectory& trajectory,
                                             const Eigen::VectorXd& frequencies);

/// Outgoing spectra assembled from the excited-state Fourier transform:
/// C_p(omega, inf) = C_p(omega, 0) - i g sqrt(kappa/pi)/(kappa + i omega) C~_e(omega + delta_p).
SpectralState outgoing_spectra_timedomain(const Trajectory& trajectory, const SystemParams& params,
                                          const PulseSpec& pulse, const FrequencyGrid& grid);

/// Convenience: integrate and assemble in one call.
SpectralState oracle_spectra(const SystemParams& params, const PulseSpec& pulse,
                             const FrequencyGrid& grid, const OracleOptions& options = {});

}  // namespace kingate
