#include "kingate/scattering.hpp"

#include <numbers>

namespace kingate {

void MirrorPair::validate() const {
  auto check_t = [](double t, const char* name) {
    if (!(t >= 0.0) || !(t * t < 0.5))
      throw std::invalid_argument(std::string("mirror transmission ") + name +
                                  " must satisfy 0 <= t and t^2 < 0.5");
  };
  check_t(t1, "t1");
  check_t(t2, "t2");
  if (t1 == 0.0 && t2 == 0.0) throw std::invalid_argument("at least one mirror must transmit");
  if (!(l > 0.0) || !(c > 0.0))
    throw std::invalid_argument("cavity length and speed of light must be positive");
}

namespace {

ScatteringAmplitudes amplitudes(double t1, double t2, double r1, double r2, double kl) {
  const Complex phase = std::polar(1.0, kl);
  const Complex denom = r1 * r2 * phase * phase - 1.0;
  if (std::abs(denom) < 1e-15)
    throw std::domain_error("scattering_amplitudes: resonance denominator vanishes");
  ScatteringAmplitudes out;
  // r1^2 + t1^2 = 1 for lossless mirrors; kept explicit in the numerator.
  out.a = -(r1 / phase - r2 * (r1 * r1 + t1 * t1) * phase) / denom;
  out.b = -t1 / denom;
  out.c_amp = t1 * r2 * phase / denom;
  out.d = -t1 * t2 / denom;
  return out;
}

}  // namespace

ScatteringAmplitudes scattering_amplitudes(const MirrorPair& m, double k) {
  m.validate();
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  return amplitudes(m.t1, m.t2, m.r1(), m.r2(), k * m.l);
}

ScatteringAmplitudes scattering_amplitudes_right(const MirrorPair& m, double k) {
  return scattering_amplitudes(m.mirrored(), k);
}

double nearest_resonant_k(const MirrorPair& m, double k_guess) {
  m.validate();
  const double pi = std::numbers::pi;
  const double n = std::max(0.0, std::ceil((k_guess * m.l / pi - 1.0) / 2.0));
  return (2.0 * n + 1.0) * pi / m.l;
}

double total_loss_rate(const MirrorPair& m) {
  m.validate();
  return (m.t1 * m.t1 + m.t2 * m.t2) * m.c / (4.0 * m.l);
}

ModeSplit mode_split(const MirrorPair& m) {
  if (m.t1 == 0.0 && m.t2 == 0.0) throw std::invalid_argument("mode_split: both mirrors opaque");
  const double norm = std::hypot(m.t1, m.t2);
  return {m.t1 / norm, m.t2 / norm};
}

double uncoupled_failure_probability(const ModeSplit& s) { return s.tau2 * s.tau2; }

NearResonanceAmplitudes near_resonance_amplitudes(const ModeSplit& s) {
  const double a = s.tau1 * s.tau1 - s.tau2 * s.tau2;
  const double d = 2.0 * s.tau1 * s.tau2;
  return {a, d, -a, d};
}

NetworkOutput beamsplitter_network_output(const ModeSplit& s, Complex a, Complex d,
                                          Complex a_right, Complex d_right, Complex emitted) {
  const Complex upper = emitted * (s.tau1 * a + s.tau2 * d_right);
  const Complex lower = emitted * (s.tau1 * d + s.tau2 * a_right);
  return {s.tau1 * upper + s.tau2 * lower, -s.tau2 * upper + s.tau1 * lower};
}

NetworkOutput beamsplitter_network_output(const ModeSplit& s, Complex emitted) {
  // With A = tau1^2 - tau2^2 and D = 2 tau1 tau2 the two paths carry tau1 and
  // tau2 (tau1^2 + tau2^2 = 1). Combining the real coefficients first keeps
  // the upward cancellation exact.
  const double upper = s.tau1, lower = s.tau2;
  return {emitted * (s.tau1 * upper + s.tau2 * lower), emitted * (-s.tau2 * upper + s.tau1 * lower)};
}

}  // namespace kingate
