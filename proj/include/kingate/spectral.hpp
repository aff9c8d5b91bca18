#pragma once

// Exact frequency-domain solution for a single photon reflected off the
// atom-cavity system. The pointwise kernels are templates so that they can be
// evaluated in extended precision; everything that touches a grid is double.

#include "kingate/core.hpp"

#include <cmath>
#include <complex>

namespace kingate {

/// Scattering of one incident frequency nu, written with a common
/// denominator: the reflected photon keeps nu and leaves with amplitude
/// num_h/den, the converted photon leaves at nu + epsilon with num_v/den.
template <typename Scalar>
struct ScatteringKernel {
  std::complex<Scalar> num_h;
  std::complex<Scalar> num_v;
  std::complex<Scalar> den;
};

/// D(omega) = 2 g^2 (kappa + i omega) - i (omega + delta_a)(kappa^2 + omega^2).
template <typename Scalar>
std::complex<Scalar> degenerate_denominator(const BasicSystemParams<Scalar>& p, Scalar omega) {
  const Scalar two_g2 = Scalar(2) * p.g * p.g;
  const Scalar lorentz = p.kappa * p.kappa + omega * omega;
  return {two_g2 * p.kappa, two_g2 * omega - (omega + p.delta_h) * lorentz};
}

template <typename Scalar>
ScatteringKernel<Scalar> degenerate_kernel(const BasicSystemParams<Scalar>& p, Scalar omega) {
  const Scalar two_g2 = Scalar(2) * p.g * p.g;
  const Scalar lorentz = p.kappa * p.kappa + omega * omega;
  return {{Scalar(0), two_g2 * omega - (omega + p.delta_h) * lorentz},
          {-two_g2 * p.kappa, Scalar(0)},
          degenerate_denominator(p, omega)};
}

/// Polynomial (cleared) form of the nondegenerate scattering at incident
/// frequency nu. Multiplying through by (kappa - i(nu + eps)) removes the
/// nested fraction of the exact denominator.
template <typename Scalar>
ScatteringKernel<Scalar> nondegenerate_kernel(const BasicSystemParams<Scalar>& p, Scalar nu) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar eps = p.epsilon();
  const Scalar two_g2k = Scalar(2) * p.g * p.g * p.kappa;
  const C u(p.kappa, nu);
  const C w(p.kappa, nu + eps);
  const C wc = std::conj(w);
  const C poly = p.g * p.g * (Scalar(2) * wc + i * eps) -
                 i * (nu + p.delta_h) * C(p.kappa, -nu) * wc;
  const C den = u * w * poly;
  return {den - two_g2k * w * wc, -two_g2k * u * wc, den};
}

/// Prefactor of C_h(omega, 0) in the outgoing H spectrum (general epsilon).
template <typename Scalar>
std::complex<Scalar> h_coefficient(const BasicSystemParams<Scalar>& p, Scalar omega) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar g2 = p.g * p.g;
  const Scalar eps = p.epsilon();
  const C denom = g2 * (Scalar(2) + i * eps / C(p.kappa, -(omega + eps))) -
                  i * (omega + p.delta_h) * C(p.kappa, -omega);
  return Scalar(1) - Scalar(2) * g2 * p.kappa / C(p.kappa, omega) / denom;
}

/// Prefactor of C_h(omega - epsilon, 0) in the outgoing V spectrum.
template <typename Scalar>
std::complex<Scalar> v_coefficient(const BasicSystemParams<Scalar>& p, Scalar omega) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar g2 = p.g * p.g;
  const Scalar eps = p.epsilon();
  const C denom = g2 * (Scalar(2) + i * eps / C(p.kappa, -omega)) -
                  i * (omega + p.delta_v) * C(p.kappa, -(omega - eps));
  return -Scalar(2) * g2 * p.kappa / C(p.kappa, omega) / denom;
}

/// Denominator of the excited-state spectrum at frequency omega (measured in
/// the frame of the drive), for an H photon and the atom starting in |1>.
template <typename Scalar>
std::complex<Scalar> excited_denominator(const BasicSystemParams<Scalar>& p, Scalar omega) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const Scalar g2 = p.g * p.g;
  return g2 * (Scalar(2) + i * p.epsilon() / C(p.kappa, -(omega - p.delta_v))) -
         i * omega * C(p.kappa, -(omega - p.delta_h));
}

/// psi(omega) = atan[((omega + delta_a)(kappa^2 + omega^2) - 2 g^2 omega) / (2 g^2 kappa)].
/// atan2 with a positive second argument; identical to atan on its range.
template <typename Scalar>
Scalar psi_phase(const BasicSystemParams<Scalar>& p, Scalar omega) {
  using std::atan2;
  const Scalar two_g2 = Scalar(2) * p.g * p.g;
  const Scalar y = (omega + p.delta_h) * (p.kappa * p.kappa + omega * omega) - two_g2 * omega;
  return atan2(y, two_g2 * p.kappa);
}

template <typename Scalar>
Scalar psi_derivative(const BasicSystemParams<Scalar>& p, Scalar omega) {
  const Scalar two_g2k = Scalar(2) * p.g * p.g * p.kappa;
  const Scalar y =
      (omega + p.delta_h) * (p.kappa * p.kappa + omega * omega) - Scalar(2) * p.g * p.g * omega;
  const Scalar dy = p.kappa * p.kappa + Scalar(3) * omega * omega + Scalar(2) * omega * p.delta_h -
                    Scalar(2) * p.g * p.g;
  return two_g2k * dy / (two_g2k * two_g2k + y * y);
}

template <typename Scalar>
Scalar psi_second_derivative(const BasicSystemParams<Scalar>& p, Scalar omega) {
  const Scalar two_g2k = Scalar(2) * p.g * p.g * p.kappa;
  const Scalar y =
      (omega + p.delta_h) * (p.kappa * p.kappa + omega * omega) - Scalar(2) * p.g * p.g * omega;
  const Scalar dy = p.kappa * p.kappa + Scalar(3) * omega * omega + Scalar(2) * omega * p.delta_h -
                    Scalar(2) * p.g * p.g;
  const Scalar ddy = Scalar(6) * omega + Scalar(2) * p.delta_h;
  const Scalar m = two_g2k * two_g2k + y * y;
  return two_g2k * (ddy * m - dy * Scalar(2) * y * dy) / (m * m);
}

/// Excited-state amplitude spectrum, C_e(t) = (1/2pi) int C~_e(w) e^{-iwt} dw.
/// Uses the continuum normalization in which the incident spectrum has unit
/// norm, so the prefactor is -2 i g sqrt(pi kappa).
Complex excited_spectrum(const SystemParams& params, const PulseSpec& pulse, double omega);

/// Outgoing spectra for any epsilon. The V-polarized case uses the h <-> v,
/// epsilon -> -epsilon symmetry. At epsilon == 0 this returns the degenerate
/// result unchanged.
SpectralState outgoing_spectra_nondegenerate(const SystemParams& params, const PulseSpec& pulse,
                                             const FrequencyGrid& grid);

/// Outgoing spectra for degenerate ground states (epsilon must be zero).
SpectralState outgoing_spectra_degenerate(const SystemParams& params, const PulseSpec& pulse,
                                          const FrequencyGrid& grid);

struct AdiabaticCoeffs {
  Complex alpha;
  Complex beta;
  double theta = 0.0;  // atan(epsilon / kappa)
};

/// |H,1> -> alpha |H,1> + beta |V,0> with the prefactors frozen at the carrier.
AdiabaticCoeffs adiabatic_coeffs(const SystemParams& params, double carrier);

/// Degenerate gate fidelity: e^{2i Phi} F = int e^{2 i psi(omega)} |C_h(omega,0)|^2 d omega.
GateResult fidelity(const SystemParams& params, const PulseSpec& pulse, const FrequencyGrid& grid,
                    double phi_target = 0.0);

/// (|H,1> + |V,0>)/sqrt(2) with the V pulse carried at Delta + v_carrier_offset.
SpectralState plus_input_state(const PulseSpec& pulse, const FrequencyGrid& grid,
                               double v_carrier_offset = 0.0);

/// Output of plus_input_state after the interaction.
SpectralState outgoing_spectra_plus(const SystemParams& params, const PulseSpec& pulse,
                                    const FrequencyGrid& grid, double v_carrier_offset = 0.0);

/// Frequency-preserving ideal gate:
/// |H,1> -> -e^{i phi}[i sin(phi)|H,1> + cos(phi)|V,0>],
/// |V,0> -> -e^{i phi}[cos(phi)|H,1> + i sin(phi)|V,0>].
SpectralState ideal_gate_output(const SpectralState& input, double phi);

/// Overlap of the actual output of the plus input state with `target`.
/// fidelity = |<target|actual>|, phase_error = arg<target|actual>/2 and
/// phase = phi_target + phase_error, which reduces to fidelity() at
/// epsilon = 0 when target = ideal_gate_output(plus input, phi_target).
GateResult fidelity_nondegenerate(const SystemParams& params, const PulseSpec& pulse,
                                  const FrequencyGrid& grid, const SpectralState& target,
                                  double phi_target = 0.0, double v_carrier_offset = 0.0);

/// Coefficient of 1/T^2 in 1 - F^2 (equals 4 psi'(Delta)^2).
double infidelity_quadratic_term(const SystemParams& params, double carrier);

/// Coefficient of 1/T^2 in Phi - phi (equals psi''(Delta)/2).
double phase_quadratic_term(const SystemParams& params, double carrier);

/// e^{2 i theta_k} = (kappa + i omega)/(kappa - i omega).
Complex appendix_phase_factor(double kappa, double omega);

/// Multiplies both spectra by the cavity-induced phase factor.
SpectralState apply_appendix_phase(const SpectralState& state, double kappa);

}  // namespace kingate
