#include "kingate/tuning.hpp"

#include "kingate/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace kingate {

namespace {

void require_positive(double g, double kappa) {
  if (!(g > 0.0)) throw std::invalid_argument("coupling g must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("loss rate kappa must be positive");
}

template <typename T>
T horner(const Eigen::VectorXd& ascending, T x) {
  T acc = T(ascending(ascending.size() - 1));
  for (Eigen::Index i = ascending.size() - 2; i >= 0; --i) acc = acc * x + ascending(i);
  return acc;
}

Complex newton_polish(const Eigen::VectorXd& ascending, Complex z) {
  Eigen::VectorXd deriv(ascending.size() - 1);
  for (Eigen::Index i = 1; i < ascending.size(); ++i) deriv(i - 1) = double(i) * ascending(i);
  double best = std::abs(horner(ascending, z));
  for (int iter = 0; iter < 50 && best > 0.0; ++iter) {
    const Complex dp = horner(deriv, z);
    if (dp == Complex(0.0)) break;
    const Complex next = z - horner(ascending, z) / dp;
    const double r = std::abs(horner(ascending, next));
    if (!(r < best)) break;
    z = next;
    best = r;
  }
  return z;
}

// Descending Delta, labels 1..n.
void label_branches(std::vector<DetuningSolution>& out) {
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.carrier_detuning > b.carrier_detuning;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].branch = int(i) + 1;
}

double sqrt_swap_residual(double g, double kappa, double d, double da) {
  return (d + da) * (kappa * kappa + d * d) - 2.0 * g * g * (d + kappa);
}

double swap_residual(double g, double kappa, double d, double da) {
  return (d + da) * (kappa * kappa + d * d) - 2.0 * g * g * d;
}

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::SqrtSwapAdiabatic: return "sqrt-swap";
    case Condition::SqrtSwapNonAdiabatic: return "sqrt-swap-nonadiabatic";
    case Condition::SwapAdiabatic: return "swap";
    case Condition::SwapNonAdiabatic: return "swap-nonadiabatic";
    case Condition::NondegenerateSqrtSwap: return "nondegenerate";
  }
  return "unknown";
}

double sqrt_swap_delta_a(double g, double kappa, double carrier) {
  const double lorentz = kappa * kappa + carrier * carrier;
  if (!(lorentz > 0.0)) throw std::invalid_argument("sqrt_swap_delta_a: kappa^2 + Delta^2 must be positive");
  return 2.0 * g * g * (carrier + kappa) / lorentz - carrier;
}

double swap_delta_a(double g, double kappa, double carrier) {
  return carrier * (2.0 * g * g / (kappa * kappa + carrier * carrier) - 1.0);
}

DetuningSolution sqrt_swap_adiabatic(double g, double kappa, double carrier) {
  return {carrier, sqrt_swap_delta_a(g, kappa, carrier), 1, Condition::SqrtSwapAdiabatic};
}

DetuningSolution swap_adiabatic(double g, double kappa, double carrier) {
  return {carrier, swap_delta_a(g, kappa, carrier), 1, Condition::SwapAdiabatic};
}

DetuningSolution NondegenerateTuning::solution() const {
  return {carrier_h, delta_h, 1, Condition::NondegenerateSqrtSwap, delta_h - delta_v};
}

NondegenerateTuning nondegenerate_sqrt_swap(double g, double kappa, double epsilon) {
  require_positive(g, kappa);
  NondegenerateTuning t;
  t.carrier_h = -epsilon / 2.0;
  t.delta_h = epsilon / 2.0 +
              2.0 * g * g / (kappa * (1.0 + epsilon * epsilon / (4.0 * kappa * kappa)));
  t.delta_v = t.delta_h - epsilon;
  t.theta = std::atan(epsilon / kappa);
  return t;
}

double first_order_epsilon_error(double g, double kappa) {
  require_positive(g, kappa);
  return -1.0 / (4.0 * kappa) + kappa / (8.0 * g * g);
}

double mis_overlap_penalty(double epsilon, double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("mis_overlap_penalty: T must be positive");
  const double x = epsilon * duration;
  return -std::expm1(-x * x / 4.0);
}

Eigen::Matrix<double, 5, 1> nonadiabatic_quartic(double g, double kappa) {
  const double g2 = g * g;
  const double k2 = kappa * kappa;
  Eigen::Matrix<double, 5, 1> c;
  c << k2 * (k2 - 2.0 * g2), 4.0 * g2 * kappa, 2.0 * (g2 + k2), 0.0, 1.0;
  return c;
}

Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& ascending) {
  Eigen::Index n = ascending.size() - 1;
  while (n > 0 && ascending(n) == 0.0) --n;
  if (n < 1) throw std::invalid_argument("polynomial_roots: polynomial has no roots");
  const Eigen::VectorXd coeffs = ascending.head(n + 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  companion.diagonal(-1).setOnes();
  companion.col(n - 1) = -coeffs.head(n) / coeffs(n);
  Eigen::VectorXcd roots = companion.eigenvalues();
  for (Eigen::Index i = 0; i < n; ++i) roots(i) = newton_polish(coeffs, roots(i));
  return roots;
}

std::vector<double> real_roots(const Eigen::VectorXd& ascending) {
  const Eigen::VectorXcd roots = polynomial_roots(ascending);
  std::vector<double> out;
  for (const Complex& z : roots)
    if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z))) out.push_back(z.real());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DetuningSolution> nonadiabatic_sqrt_swap(double g, double kappa) {
  require_positive(g, kappa);
  std::vector<DetuningSolution> out;
  for (double d : real_roots(nonadiabatic_quartic(g, kappa))) {
    // Both conditions hold at a root; the sqrt(SWAP) one stays regular at Delta = 0.
    out.push_back({d, sqrt_swap_delta_a(g, kappa, d), 0, Condition::SqrtSwapNonAdiabatic});
  }
  label_branches(out);
  return out;
}

double good_cavity_threshold() { return 12.0 * std::sqrt(3.0) - 20.0; }

std::vector<DetuningSolution> swap_nonadiabatic_delta(double g, double kappa) {
  require_positive(g, kappa);
  std::vector<DetuningSolution> out;
  if (!(2.0 * g * g > kappa * kappa)) return out;
  const double d2 = g * std::sqrt(g * g + 4.0 * kappa * kappa) - g * g - kappa * kappa;
  if (!(d2 > 0.0)) return out;
  for (double d : {std::sqrt(d2), -std::sqrt(d2)})
    out.push_back({d, swap_delta_a(g, kappa, d), 0, Condition::SwapNonAdiabatic});
  label_branches(out);
  return out;
}

double residual(const DetuningSolution& s, double g, double kappa) {
  const double d = s.carrier_detuning;
  const double da = s.atom_detuning;
  switch (s.condition) {
    case Condition::SqrtSwapAdiabatic:
      return std::abs(sqrt_swap_residual(g, kappa, d, da));
    case Condition::SqrtSwapNonAdiabatic: {
      const auto c = nonadiabatic_quartic(g, kappa);
      const double quartic = (((c(4) * d + c(3)) * d + c(2)) * d + c(1)) * d + c(0);
      return std::max(std::abs(sqrt_swap_residual(g, kappa, d, da)), std::abs(quartic));
    }
    case Condition::SwapAdiabatic:
      return std::abs(swap_residual(g, kappa, d, da));
    case Condition::SwapNonAdiabatic: {
      const double target = g * std::sqrt(g * g + 4.0 * kappa * kappa) - g * g - kappa * kappa;
      return std::max(std::abs(swap_residual(g, kappa, d, da)), std::abs(d * d - target));
    }
    case Condition::NondegenerateSqrtSwap: {
      const SystemParams p{g, kappa, da, da - s.epsilon};
      return std::abs(adiabatic_coeffs(p, d).alpha - Complex(0.5, -0.5));
    }
  }
  return 0.0;
}

}  // namespace kingate
