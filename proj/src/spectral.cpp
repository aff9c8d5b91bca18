#include "kingate/spectral.hpp"

#include <numbers>

namespace kingate {

namespace {

// Spectral mass of |C|^2 beyond 8 sigma is below 1e-15.
constexpr double kCoverageSigmas = 8.0;

void require_band(const FrequencyGrid& grid, double centre, double duration, const char* what) {
  const double half = kCoverageSigmas / duration;
  if (!grid.covers(centre - half, centre + half))
    throw std::invalid_argument(std::string(what) + ": frequency grid does not cover the band at " +
                                std::to_string(centre));
}

void require_degenerate(const SystemParams& params, const char* what) {
  if (!params.degenerate())
    throw std::invalid_argument(std::string(what) + " requires degenerate ground states");
}

// H photon incident, atom in |1>. The V-polarized case is mapped onto this one
// by the caller.
SpectralState scatter_h_nondegenerate(const SystemParams& p, const PulseSpec& pulse,
                                      const FrequencyGrid& grid) {
  const double eps = p.epsilon();
  SpectralState out{grid, Eigen::VectorXcd(grid.size()), Eigen::VectorXcd(grid.size())};
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double w = grid.points(j);
    out.c_h(j) = h_coefficient(p, w) * gaussian_spectrum(pulse, w);
    out.c_v(j) = v_coefficient(p, w) * gaussian_spectrum(pulse, w - eps);
  }
  return out;
}

SpectralState scatter_h_degenerate(const SystemParams& p, const PulseSpec& pulse,
                                   const FrequencyGrid& grid) {
  SpectralState out{grid, Eigen::VectorXcd(grid.size()), Eigen::VectorXcd(grid.size())};
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double w = grid.points(j);
    const auto k = degenerate_kernel(p, w);
    const Complex in = gaussian_spectrum(pulse, w);
    out.c_h(j) = k.num_h / k.den * in;
    out.c_v(j) = k.num_v / k.den * in;
  }
  return out;
}

SpectralState swap_sectors(SpectralState s) {
  s.c_h.swap(s.c_v);
  return s;
}

}  // namespace

Complex excited_spectrum(const SystemParams& params, const PulseSpec& pulse, double omega) {
  params.validate();
  pulse.validate();
  const SystemParams p = pulse.polarization == Polarization::H ? params : params.swapped();
  const Complex den = excited_denominator(p, omega);
  if (std::abs(den) < 1e-12) throw NumericalError("excited_spectrum: vanishing denominator");
  const Complex prefactor(0.0, -2.0 * p.g * std::sqrt(std::numbers::pi * p.kappa));
  return prefactor * gaussian_spectrum(pulse, omega - p.delta_h) / den;
}

SpectralState outgoing_spectra_degenerate(const SystemParams& params, const PulseSpec& pulse,
                                          const FrequencyGrid& grid) {
  params.validate();
  pulse.validate();
  require_degenerate(params, "outgoing_spectra_degenerate");
  require_band(grid, pulse.carrier_detuning, pulse.duration, "outgoing_spectra_degenerate");
  // With epsilon = 0 the scattering is symmetric under h <-> v.
  SpectralState out = scatter_h_degenerate(params, pulse, grid);
  return pulse.polarization == Polarization::H ? out : swap_sectors(std::move(out));
}

SpectralState outgoing_spectra_nondegenerate(const SystemParams& params, const PulseSpec& pulse,
                                             const FrequencyGrid& grid) {
  if (params.degenerate()) return outgoing_spectra_degenerate(params, pulse, grid);
  params.validate();
  pulse.validate();
  const bool h_in = pulse.polarization == Polarization::H;
  const SystemParams p = h_in ? params : params.swapped();
  require_band(grid, pulse.carrier_detuning, pulse.duration, "outgoing_spectra_nondegenerate");
  require_band(grid, pulse.carrier_detuning + p.epsilon(), pulse.duration,
               "outgoing_spectra_nondegenerate");
  SpectralState out = scatter_h_nondegenerate(p, pulse, grid);
  return h_in ? out : swap_sectors(std::move(out));
}

AdiabaticCoeffs adiabatic_coeffs(const SystemParams& params, double carrier) {
  params.validate();
  const double eps = params.epsilon();
  AdiabaticCoeffs out;
  out.alpha = h_coefficient(params, carrier);
  out.beta = -Complex(params.kappa, carrier) / Complex(params.kappa, carrier + eps) *
             (1.0 - out.alpha);
  out.theta = std::atan(eps / params.kappa);
  return out;
}

GateResult fidelity(const SystemParams& params, const PulseSpec& pulse, const FrequencyGrid& grid,
                    double phi_target) {
  params.validate();
  pulse.validate();
  require_degenerate(params, "fidelity");
  require_band(grid, pulse.carrier_detuning, pulse.duration, "fidelity");
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < grid.size(); ++j) {
    const double w = grid.points(j);
    const Complex d = degenerate_denominator(params, w);
    const double density = std::norm(gaussian_spectrum(pulse, w));
    acc += grid.weights(j) * density * (std::conj(d) / d);
  }
  const double f = std::abs(acc);
  if (f > 1.0 + 1e-8) throw NumericalError("fidelity: |overlap| exceeds one, grid too coarse");
  return make_gate_result(f, 0.5 * std::arg(acc), phi_target);
}

SpectralState plus_input_state(const PulseSpec& pulse, const FrequencyGrid& grid,
                               double v_carrier_offset) {
  PulseSpec v_pulse = pulse;
  v_pulse.carrier_detuning += v_carrier_offset;
  const double s = std::numbers::sqrt2 / 2.0;
  return {grid, s * sample_spectrum(pulse, grid), s * sample_spectrum(v_pulse, grid)};
}

SpectralState outgoing_spectra_plus(const SystemParams& params, const PulseSpec& pulse,
                                    const FrequencyGrid& grid, double v_carrier_offset) {
  PulseSpec h_pulse = pulse;
  h_pulse.polarization = Polarization::H;
  PulseSpec v_pulse = pulse;
  v_pulse.polarization = Polarization::V;
  v_pulse.carrier_detuning += v_carrier_offset;
  const SpectralState from_h = outgoing_spectra_nondegenerate(params, h_pulse, grid);
  const SpectralState from_v = outgoing_spectra_nondegenerate(params, v_pulse, grid);
  const double s = std::numbers::sqrt2 / 2.0;
  return {grid, s * (from_h.c_h + from_v.c_h), s * (from_h.c_v + from_v.c_v)};
}

SpectralState ideal_gate_output(const SpectralState& input, double phi) {
  const Complex i(0.0, 1.0);
  const Complex pre = -std::polar(1.0, phi);
  const Complex diag = pre * i * std::sin(phi);
  const Complex off = pre * std::cos(phi);
  return {input.grid, diag * input.c_h + off * input.c_v, off * input.c_h + diag * input.c_v};
}

GateResult fidelity_nondegenerate(const SystemParams& params, const PulseSpec& pulse,
                                  const FrequencyGrid& grid, const SpectralState& target,
                                  double phi_target, double v_carrier_offset) {
  if (!target.grid.same_as(grid))
    throw std::invalid_argument("fidelity_nondegenerate: target lives on a different grid");
  const SpectralState actual = outgoing_spectra_plus(params, pulse, grid, v_carrier_offset);
  const Complex ov = overlap(target, actual);
  const double f = std::abs(ov);
  if (f > 1.0 + 1e-8) throw NumericalError("fidelity_nondegenerate: |overlap| exceeds one");
  const double err = 0.5 * std::arg(ov);
  return make_gate_result(f, phi_target + err, phi_target);
}

double infidelity_quadratic_term(const SystemParams& params, double carrier) {
  params.validate();
  require_degenerate(params, "infidelity_quadratic_term");
  const double g2 = params.g * params.g;
  const double k2 = params.kappa * params.kappa;
  const double d = carrier;
  const double da = params.delta_a();
  const double slope = -2.0 * g2 + 2.0 * da * d + 3.0 * d * d + k2;
  const double y = (d + da) * (d * d + k2) - 2.0 * g2 * d;
  const double m = 4.0 * g2 * g2 * k2 + y * y;
  return 16.0 * g2 * g2 * k2 * slope * slope / (m * m);
}

double phase_quadratic_term(const SystemParams& params, double carrier) {
  params.validate();
  require_degenerate(params, "phase_quadratic_term");
  return 0.5 * psi_second_derivative(params, carrier);
}

Complex appendix_phase_factor(double kappa, double omega) {
  if (!(kappa > 0.0)) throw std::invalid_argument("appendix_phase_factor: kappa must be positive");
  return Complex(kappa, omega) / Complex(kappa, -omega);
}

SpectralState apply_appendix_phase(const SpectralState& state, double kappa) {
  SpectralState out = state;
  for (Eigen::Index j = 0; j < state.grid.size(); ++j) {
    const Complex f = appendix_phase_factor(kappa, state.grid.points(j));
    out.c_h(j) *= f;
    out.c_v(j) *= f;
  }
  return out;
}

}  // namespace kingate
