#include "kingate/core.hpp"

#include <algorithm>

namespace kingate {

std::string to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

Polarization polarization_from_string(const std::string& s) {
  if (s == "H" || s == "h") return Polarization::H;
  if (s == "V" || s == "v") return Polarization::V;
  throw std::invalid_argument("unknown polarization '" + s + "' (expected H or V)");
}

Complex overlap(const SpectralState& a, const SpectralState& b) {
  if (!a.grid.same_as(b.grid)) throw std::invalid_argument("overlap: states live on different grids");
  const Eigen::VectorXcd integrand =
      (a.c_h.conjugate().array() * b.c_h.array() + a.c_v.conjugate().array() * b.c_v.array())
          .matrix();
  return a.grid.integrate(integrand);
}

double l2_distance(const SpectralState& a, const SpectralState& b) {
  if (!a.grid.same_as(b.grid))
    throw std::invalid_argument("l2_distance: states live on different grids");
  const Eigen::VectorXd d = (a.c_h - b.c_h).array().abs2() + (a.c_v - b.c_v).array().abs2();
  return std::sqrt(std::max(0.0, a.grid.integrate(d)));
}

GateResult make_gate_result(double fidelity, double phase, double phi_target) {
  return {fidelity, phase, 1.0 - fidelity * fidelity, phase - phi_target};
}

Complex gaussian_spectrum(const PulseSpec& pulse, double omega) {
  return {gaussian_amplitude(pulse.duration, pulse.carrier_detuning, omega), 0.0};
}

Eigen::VectorXcd sample_spectrum(const PulseSpec& pulse, const FrequencyGrid& grid) {
  Eigen::VectorXcd out(grid.size());
  for (Eigen::Index j = 0; j < grid.size(); ++j) out(j) = gaussian_spectrum(pulse, grid.points(j));
  return out;
}

namespace {

FrequencyGrid uniform_grid(double lo, double spacing, Eigen::Index n) {
  FrequencyGrid grid;
  grid.points.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) grid.points(j) = lo + double(j) * spacing;
  grid.weights = Eigen::VectorXd::Constant(n, spacing);
  grid.weights(0) *= 0.5;
  grid.weights(n - 1) *= 0.5;
  return grid;
}

void check_counts(const PulseSpec& pulse, int points_per_sigma, int halfwidth_sigmas) {
  pulse.validate();
  if (points_per_sigma < 1 || halfwidth_sigmas < 1)
    throw std::invalid_argument("grid counts must be at least 1");
}

}  // namespace

FrequencyGrid make_grid(const PulseSpec& pulse, int points_per_sigma, int halfwidth_sigmas) {
  check_counts(pulse, points_per_sigma, halfwidth_sigmas);
  const Eigen::Index half = Eigen::Index(points_per_sigma) * halfwidth_sigmas;
  const double scale = double(points_per_sigma) * pulse.duration;
  FrequencyGrid grid;
  grid.points.resize(2 * half + 1);
  // Offsets are formed as integer ratios so the grid is exactly symmetric.
  for (Eigen::Index j = 0; j <= 2 * half; ++j)
    grid.points(j) = pulse.carrier_detuning + double(j - half) / scale;
  const double spacing = 1.0 / scale;
  grid.weights = Eigen::VectorXd::Constant(2 * half + 1, spacing);
  grid.weights(0) *= 0.5;
  grid.weights(2 * half) *= 0.5;
  return grid;
}

FrequencyGrid make_grid_covering(const PulseSpec& pulse, double shift, int points_per_sigma,
                                 int halfwidth_sigmas) {
  if (shift == 0.0) return make_grid(pulse, points_per_sigma, halfwidth_sigmas);
  check_counts(pulse, points_per_sigma, halfwidth_sigmas);
  const double spacing = 1.0 / (double(points_per_sigma) * pulse.duration);
  const double halfwidth = double(halfwidth_sigmas) / pulse.duration;
  const double lo = pulse.carrier_detuning + std::min(0.0, shift) - halfwidth;
  const double hi = pulse.carrier_detuning + std::max(0.0, shift) + halfwidth;
  const auto n = Eigen::Index(std::ceil((hi - lo) / spacing - 1e-9)) + 1;
  return uniform_grid(lo, spacing, n);
}

SpectralState incident_state(const PulseSpec& pulse, const FrequencyGrid& grid) {
  SpectralState s{grid, Eigen::VectorXcd::Zero(grid.size()), Eigen::VectorXcd::Zero(grid.size())};
  if (pulse.polarization == Polarization::H)
    s.c_h = sample_spectrum(pulse, grid);
  else
    s.c_v = sample_spectrum(pulse, grid);
  return s;
}

}  // namespace kingate
