#pragma once

// Domain types shared by every module. All rates and frequencies are in
// units of the cavity loss rate kappa, all times in units of 1/kappa.
// Frequencies are measured from the cavity resonance.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kingate {

using Complex = std::complex<double>;

/// Thrown when a computed quantity fails an internal consistency check
/// (norm above one, undecayed trajectory, step-size underflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Atom-cavity parameters. `delta_h` and `delta_v` are the detunings
/// Omega_c - omega_0h and Omega_c - omega_0v of the two transitions.
template <typename Scalar>
struct BasicSystemParams {
  Scalar g{1};
  Scalar kappa{1};
  Scalar delta_h{0};
  Scalar delta_v{0};

  /// Ground-state splitting delta_h - delta_v.
  Scalar epsilon() const { return delta_h - delta_v; }
  bool degenerate() const { return delta_h == delta_v; }

  /// Common atom-cavity detuning of the degenerate case.
  Scalar delta_a() const { return delta_h; }

  static BasicSystemParams degenerate_params(Scalar g, Scalar kappa, Scalar delta_a) {
    BasicSystemParams p{g, kappa, delta_a, delta_a};
    p.validate();
    return p;
  }

  /// Parameters seen by a V-polarized photon: h and v roles interchanged,
  /// which reverses the sign of epsilon.
  BasicSystemParams swapped() const { return {g, kappa, delta_v, delta_h}; }

  template <typename Other>
  BasicSystemParams<Other> cast() const {
    return {Other(g), Other(kappa), Other(delta_h), Other(delta_v)};
  }

  void validate() const {
    if (!(g > Scalar(0))) throw std::invalid_argument("coupling g must be positive");
    if (!(kappa > Scalar(0))) throw std::invalid_argument("loss rate kappa must be positive");
    using std::isfinite;
    if (!isfinite(delta_h) || !isfinite(delta_v))
      throw std::invalid_argument("atom-cavity detunings must be finite");
  }
};

using SystemParams = BasicSystemParams<double>;

enum class Polarization { H, V };
enum class PulseShape { Gaussian };

std::string to_string(Polarization p);
Polarization polarization_from_string(const std::string& s);

struct PulseSpec {
  double duration = 10.0;          // T
  double carrier_detuning = 0.0;   // Delta, pulse carrier minus cavity resonance
  Polarization polarization = Polarization::H;
  PulseShape shape = PulseShape::Gaussian;

  void validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration))
      throw std::invalid_argument("pulse duration must be positive");
    if (!std::isfinite(carrier_detuning))
      throw std::invalid_argument("carrier detuning must be finite");
  }
};

/// Sampled frequency axis with quadrature weights for integrals over omega.
struct FrequencyGrid {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return points.size(); }
  double lower() const { return points(0); }
  double upper() const { return points(points.size() - 1); }
  double spacing() const { return points(1) - points(0); }
  bool covers(double lo, double hi) const { return lower() <= lo && upper() >= hi; }
  bool same_as(const FrequencyGrid& other) const {
    return points.size() == other.points.size() && points == other.points &&
           weights == other.weights;
  }

  double integrate(const Eigen::VectorXd& f) const { return weights.dot(f); }
  Complex integrate(const Eigen::VectorXcd& f) const {
    return (weights.cast<Complex>().array() * f.array()).sum();
  }
};

/// Photon spectra in the two single-excitation sectors: `c_h` is the H photon
/// with the atom in |1>, `c_v` the V photon with the atom in |0>.
struct SpectralState {
  FrequencyGrid grid;
  Eigen::VectorXcd c_h;
  Eigen::VectorXcd c_v;

  double norm() const {
    return grid.integrate(Eigen::VectorXd(c_h.array().abs2() + c_v.array().abs2()));
  }
};

/// Overlap <a|b> = integral of conj(a_h) b_h + conj(a_v) b_v. Grids must match.
Complex overlap(const SpectralState& a, const SpectralState& b);

/// L2 distance between two states on the same grid.
double l2_distance(const SpectralState& a, const SpectralState& b);

struct GateResult {
  double fidelity = 0.0;     // F
  double phase = 0.0;        // Phi
  double infidelity = 1.0;   // 1 - F^2
  double phase_error = 0.0;  // Phi - phi_target
};

GateResult make_gate_result(double fidelity, double phase, double phi_target);

/// Real, zero-phase Gaussian amplitude whose modulus squared is
/// (T/sqrt(2 pi)) exp[-(omega - Delta)^2 T^2 / 2].
template <typename Real>
Real gaussian_amplitude(Real duration, Real carrier, Real omega) {
  using std::exp;
  using std::sqrt;
  const Real x = (omega - carrier) * duration;
  return sqrt(duration / sqrt(Real(2) * std::numbers::pi_v<Real>)) * exp(-x * x / Real(4));
}

Complex gaussian_spectrum(const PulseSpec& pulse, double omega);

/// Incident amplitude sampled on `grid`.
Eigen::VectorXcd sample_spectrum(const PulseSpec& pulse, const FrequencyGrid& grid);

inline constexpr int kDefaultPointsPerSigma = 10;
inline constexpr int kDefaultHalfwidthSigmas = 12;

/// Uniform trapezoidal grid centred on the carrier with half-width
/// halfwidth_sigmas / T and spacing 1 / (points_per_sigma T).
FrequencyGrid make_grid(const PulseSpec& pulse, int points_per_sigma = kDefaultPointsPerSigma,
                        int halfwidth_sigmas = kDefaultHalfwidthSigmas);

/// Same spacing as make_grid, extended so that the band displaced by `shift`
/// is covered as well.
FrequencyGrid make_grid_covering(const PulseSpec& pulse, double shift,
                                 int points_per_sigma = kDefaultPointsPerSigma,
                                 int halfwidth_sigmas = kDefaultHalfwidthSigmas);

/// State of an incident pulse before the interaction.
SpectralState incident_state(const PulseSpec& pulse, const FrequencyGrid& grid);

}  // namespace kingate
