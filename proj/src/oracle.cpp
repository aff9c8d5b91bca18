#include "kingate/oracle.hpp"

#include <algorithm>
#include <numbers>

namespace kingate {

namespace {

using State = Eigen::Matrix<Complex, 4, 1>;  // (c_e, s_h, s_v, b)

// y' = generator * y + forcing(t). The forcing is the time-domain Gaussian
// pulse int C_h(omega,0) e^{-i omega t} d omega, seen in the frame of the
// H transition.
class Dynamics {
 public:
  Dynamics(const SystemParams& p, const PulseSpec& pulse) {
    const Complex i(0.0, 1.0);
    const double g2 = p.g * p.g;
    generator_.setZero();
    generator_(0, 1) = -g2;
    generator_(0, 2) = -g2;
    generator_(0, 3) = -i * p.g * std::sqrt(p.kappa / std::numbers::pi);
    generator_(1, 0) = 1.0;
    generator_(1, 1) = -Complex(p.kappa, p.delta_h);
    generator_(2, 0) = 1.0;
    generator_(2, 2) = -Complex(p.kappa, p.delta_v);
    generator_(3, 3) = -Complex(p.kappa, p.delta_h);
    const double T = pulse.duration;
    amplitude_ = std::sqrt(T / std::sqrt(2.0 * std::numbers::pi)) * 2.0 *
                 std::sqrt(std::numbers::pi) / T;
    inv_t2_ = 1.0 / (T * T);
    carrier_ = pulse.carrier_detuning + p.delta_h;
  }

  State operator()(double t, const State& y) const {
    State dy = generator_ * y;
    dy(3) += pulse(t);
    return dy;
  }

  Complex pulse(double t) const {
    return std::polar(amplitude_ * std::exp(-t * t * inv_t2_), -carrier_ * t);
  }

 private:
  Eigen::Matrix4cd generator_;
  double amplitude_ = 0.0;
  double inv_t2_ = 0.0;
  double carrier_ = 0.0;
};

State rk4_step(const Dynamics& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const State k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const State k4 = f(t + h, y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

struct StepResult {
  State y;
  double error;  // scaled; accept when <= 1
};

StepResult dopri_step(const Dynamics& f, double t, const State& y, double h, double tol) {
  using namespace dp;
  const State k1 = f(t, y);
  const State k2 = f(t + c2 * h, y + h * (a21 * k1));
  const State k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
  const State k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const State k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const State k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  const State y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const State k7 = f(t + h, y5);
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double scale = tol * (1.0 + std::max(std::abs(y(i)), std::abs(y5(i))));
    worst = std::max(worst, std::abs(err(i)) / scale);
  }
  return {y5, worst};
}

TimeDomainState to_sample(double t, const State& y) { return {t, y(0), y(1), y(2), y(3)}; }

double magnitude(const State& y) { return y.cwiseAbs().maxCoeff(); }

}  // namespace

Trajectory integrate(const SystemParams& params, const PulseSpec& pulse,
                     const OracleOptions& options) {
  params.validate();
  pulse.validate();
  const SystemParams p = pulse.polarization == Polarization::H ? params : params.swapped();
  const double T = pulse.duration;
  const double dt = options.dt > 0.0 ? options.dt : std::min(1.0 / p.kappa, T) / 50.0;
  const double t0 = -options.lead_durations * T;
  const double t_pulse_end = options.trail_durations * T;
  const double t_limit = t_pulse_end + options.max_tail;

  const Dynamics f(p, pulse);
  Trajectory traj;
  traj.params = p;
  traj.pulse = pulse;
  traj.dt = dt;
  traj.decay_threshold = options.decay_threshold;

  State y = State::Zero();
  traj.samples.push_back(to_sample(t0, y));
  double h = dt;
  for (long n = 1;; ++n) {
    const double t_prev = t0 + double(n - 1) * dt;
    const double t_next = t0 + double(n) * dt;
    if (!options.adaptive) {
      y = rk4_step(f, t_prev, y, t_next - t_prev);
      ++traj.accepted_steps;
    } else {
      double t = t_prev;
      while (t < t_next) {
        const double remaining = t_next - t;
        const bool last = h >= remaining;
        const double step = last ? remaining : h;
        const StepResult r = dopri_step(f, t, y, step, options.tolerance);
        const double factor =
            r.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(r.error, -0.2), 0.2, 5.0);
        if (r.error <= 1.0) {
          y = r.y;
          t = last ? t_next : t + step;
          ++traj.accepted_steps;
          // Keep the natural step size across sample boundaries.
          h = last ? std::max(h, step * factor) : step * factor;
        } else {
          ++traj.rejected_steps;
          h = step * factor;
        }
        if (h < 1e-12 * std::max(1.0, std::abs(t)))
          throw NumericalError("oracle: step size underflow");
      }
      h = std::min(h, 1e3 * dt);
    }
    traj.samples.push_back(to_sample(t_next, y));
    if (t_next >= t_pulse_end && magnitude(y) < options.decay_threshold) break;
    if (t_next > t_limit) throw NumericalError("oracle: excited state did not decay");
  }
  return traj;
}

Eigen::VectorXcd excited_spectrum_timedomain(const Trajectory& trajectory,
                                             const Eigen::VectorXd& frequencies) {
  const auto& s = trajectory.samples;
  if (s.size() < 2) throw std::invalid_argument("excited_spectrum_timedomain: empty trajectory");
  const double dt = trajectory.dt;
  const double t0 = s.front().t;
  const std::size_t n = s.size();
  constexpr std::size_t kReanchor = 256;
  Eigen::VectorXcd out(frequencies.size());
  for (Eigen::Index j = 0; j < frequencies.size(); ++j) {
    const double nu = frequencies(j);
    const Complex step = std::polar(1.0, nu * dt);
    Complex acc = 0.0;
    Complex phase = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k % kReanchor == 0) phase = std::polar(1.0, nu * (t0 + double(k) * dt));
      const double w = (k == 0 || k + 1 == n) ? 0.5 * dt : dt;
      acc += w * s[k].c_e * phase;
      phase *= step;
    }
    out(j) = acc;
  }
  return out;
}

SpectralState outgoing_spectra_timedomain(const Trajectory& trajectory, const SystemParams& params,
                                          const PulseSpec& pulse, const FrequencyGrid& grid) {
  const SystemParams p = pulse.polarization == Polarization::H ? params : params.swapped();
  if (p.g != trajectory.params.g || p.kappa != trajectory.params.kappa ||
      p.delta_h != trajectory.params.delta_h || p.delta_v != trajectory.params.delta_v ||
      pulse.duration != trajectory.pulse.duration ||
      pulse.carrier_detuning != trajectory.pulse.carrier_detuning)
    throw std::invalid_argument("outgoing_spectra_timedomain: trajectory is for other parameters");
  const TimeDomainState& last = trajectory.samples.back();
  const double tail = std::max({std::abs(last.c_e), std::abs(last.s_h), std::abs(last.s_v)});
  if (!(tail < std::max(trajectory.decay_threshold, 1e-10)))
    throw NumericalError("outgoing_spectra_timedomain: trajectory has not decayed");

  const Eigen::VectorXcd ce_h =
      excited_spectrum_timedomain(trajectory, grid.points.array() + p.delta_h);
  const Eigen::VectorXcd ce_v =
      excited_spectrum_timedomain(trajectory, grid.points.array() + p.delta_v);
  const double coupling = p.g * std::sqrt(p.kappa / std::numbers::pi);
  SpectralState out{grid, Eigen::VectorXcd(grid.size()), Eigen::VectorXcd(grid.size())};
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double w = grid.points(j);
    const Complex emit = Complex(0.0, -coupling) / Complex(p.kappa, w);
    out.c_h(j) = gaussian_spectrum(pulse, w) + emit * ce_h(j);
    out.c_v(j) = emit * ce_v(j);
  }
  if (pulse.polarization == Polarization::V) out.c_h.swap(out.c_v);
  return out;
}

SpectralState oracle_spectra(const SystemParams& params, const PulseSpec& pulse,
                             const FrequencyGrid& grid, const OracleOptions& options) {
  return outgoing_spectra_timedomain(integrate(params, pulse, options), params, pulse, grid);
}

}  // namespace kingate
