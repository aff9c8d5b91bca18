#pragma once

// Classical scattering algebra of a two-sided Fabry-Perot cavity with
// lossless mirrors: exact mode amplitudes, the total loss rate, the split
// into coupled/uncoupled modes and the beamsplitter network that recombines
// the light leaving both mirrors.

#include "kingate/core.hpp"

#include <Eigen/Dense>

namespace kingate {

/// Real amplitude transmissions of the two mirrors, cavity length `l` and
/// speed of light `c` in one consistent unit system.
struct MirrorPair {
  double t1 = 0.1;
  double t2 = 0.1;
  double l = 1.0;
  double c = 1.0;

  double r1() const { return std::sqrt(1.0 - t1 * t1); }
  double r2() const { return std::sqrt(1.0 - t2 * t2); }
  MirrorPair mirrored() const { return {t2, t1, l, c}; }
  void validate() const;
};

/// Field amplitudes for unit incidence from one side: `a` reflected,
/// `b`/`c_amp` the two intracavity running waves, `d` transmitted.
struct ScatteringAmplitudes {
  Complex a;
  Complex b;
  Complex c_amp;
  Complex d;
};

struct ModeSplit {
  double tau1 = 1.0;
  double tau2 = 0.0;
};

/// Exact amplitudes for a mode incident from the left (mirror 1 side).
ScatteringAmplitudes scattering_amplitudes(const MirrorPair& m, double k);

/// Same for incidence from the right: indices 1 and 2 exchanged.
ScatteringAmplitudes scattering_amplitudes_right(const MirrorPair& m, double k);

/// Smallest resonant wavenumber k >= k_guess satisfying kl = (2n+1) pi.
double nearest_resonant_k(const MirrorPair& m, double k_guess);

/// kappa = (t1^2 + t2^2) c / (4 l).
double total_loss_rate(const MirrorPair& m);

ModeSplit mode_split(const MirrorPair& m);

/// Probability that a photon incident from the left occupies the uncoupled
/// mode, i.e. the minimum failure probability of a SWAP-type operation.
double uncoupled_failure_probability(const ModeSplit& s);

struct NearResonanceAmplitudes {
  double a;        // A = -A'
  double d;        // D = D'
  double a_right;  // A'
  double d_right;  // D'
};

/// Lowest-order amplitudes near resonance: A = tau1^2 - tau2^2, D = 2 tau1 tau2.
NearResonanceAmplitudes near_resonance_amplitudes(const ModeSplit& s);

/// Orthogonal map (a_k, a_-k) -> (a_c, a_u). It is its own inverse.
inline Eigen::Matrix2d coupled_basis_matrix(const ModeSplit& s) {
  Eigen::Matrix2d m;
  m << s.tau1, s.tau2, s.tau2, -s.tau1;
  return m;
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> to_coupled_basis(
    const ModeSplit& s, const Eigen::MatrixBase<Derived>& left_right) {
  using Scalar = typename Derived::Scalar;
  return coupled_basis_matrix(s).cast<Scalar>() * left_right;
}

struct NetworkOutput {
  Complex back_along_input;
  Complex upward;
};

/// Recombination of the field emitted into the coupled mode. The upper path
/// carries tau1 A + tau2 D', the lower path tau1 D + tau2 A'; the
/// beamsplitter transmits with tau1 and reflects with +tau2 on the input side
/// and -tau2 on the return side.
NetworkOutput beamsplitter_network_output(const ModeSplit& s, Complex emitted);

/// Same network driven by arbitrary left/right amplitudes (e.g. the exact ones).
NetworkOutput beamsplitter_network_output(const ModeSplit& s, Complex a, Complex d,
                                          Complex a_right, Complex d_right, Complex emitted);

}  // namespace kingate
