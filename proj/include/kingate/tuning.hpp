#pragma once

// Detuning conditions for the SWAP family of gates: adiabatic sqrt(SWAP) and
// SWAP tunings, the tunings that also cancel the leading 1/T^2 correction,
// and the nondegenerate sqrt(SWAP) tuning.

#include "kingate/core.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace kingate {

enum class Condition {
  SqrtSwapAdiabatic,
  SqrtSwapNonAdiabatic,
  SwapAdiabatic,
  SwapNonAdiabatic,
  NondegenerateSqrtSwap,
};

std::string to_string(Condition c);

struct DetuningSolution {
  double carrier_detuning = 0.0;  // Delta
  double atom_detuning = 0.0;     // delta_a
  int branch = 1;
  Condition condition = Condition::SqrtSwapAdiabatic;
  double epsilon = 0.0;  // only used by NondegenerateSqrtSwap
};

/// delta_a = 2 g^2 (Delta + kappa)/(kappa^2 + Delta^2) - Delta, which gives psi(Delta) = pi/4.
double sqrt_swap_delta_a(double g, double kappa, double carrier);

/// delta_a = Delta (2 g^2/(kappa^2 + Delta^2) - 1), which gives psi(Delta) = 0.
double swap_delta_a(double g, double kappa, double carrier);

DetuningSolution sqrt_swap_adiabatic(double g, double kappa, double carrier);
DetuningSolution swap_adiabatic(double g, double kappa, double carrier);

struct NondegenerateTuning {
  double carrier_h = 0.0;  // Delta_h
  double delta_h = 0.0;
  double delta_v = 0.0;
  double theta = 0.0;      // atan(epsilon / kappa)

  SystemParams params(double g, double kappa) const { return {g, kappa, delta_h, delta_v}; }
  DetuningSolution solution() const;
};

/// Unique adiabatic sqrt(SWAP) tuning for ground states split by epsilon:
/// Delta_h = -epsilon/2, delta_h = epsilon/2 + 2 g^2 / (kappa (1 + epsilon^2 / 4 kappa^2)).
NondegenerateTuning nondegenerate_sqrt_swap(double g, double kappa, double epsilon);

/// First-order-in-epsilon error of alpha and beta when the frequency shift is ignored.
double first_order_epsilon_error(double g, double kappa);

/// Exact loss of overlap between two Gaussian pulses of duration T whose
/// carriers differ by epsilon: 1 - exp(-epsilon^2 T^2 / 4).
double mis_overlap_penalty(double epsilon, double duration);

/// Coefficients (ascending powers) of
/// Delta^4 + 2 Delta^2 (g^2 + kappa^2) + 4 g^2 kappa Delta + kappa^2 (kappa^2 - 2 g^2).
Eigen::Matrix<double, 5, 1> nonadiabatic_quartic(double g, double kappa);

/// All complex roots of a polynomial given by ascending coefficients, from
/// the eigenvalues of its companion matrix, each refined by Newton steps.
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& ascending);

/// Real roots, filtered by |Im| < 1e-8 max(1, |root|), sorted ascending.
std::vector<double> real_roots(const Eigen::VectorXd& ascending);

/// Tunings that give sqrt(SWAP) and cancel the 1/T^2 infidelity term.
/// Branches are numbered 1..n in order of decreasing Delta. Empty below the
/// good-cavity threshold.
std::vector<DetuningSolution> nonadiabatic_sqrt_swap(double g, double kappa);

/// Minimum 2 g^2 / kappa^2 for which nonadiabatic_sqrt_swap has solutions.
double good_cavity_threshold();

/// SWAP tunings with Delta^2 = g sqrt(g^2 + 4 kappa^2) - g^2 - kappa^2; empty
/// unless 2 g^2 > kappa^2. Branches ordered by decreasing Delta.
std::vector<DetuningSolution> swap_nonadiabatic_delta(double g, double kappa);

/// Largest absolute residual of the equations defining `s`.
double residual(const DetuningSolution& s, double g, double kappa);

}  // namespace kingate
