#include "kingate/spectral.hpp"
#include "kingate/tuning.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace kingate;

namespace {

const double kPi = std::numbers::pi;

// Independent evaluation of the quartic for the bisection reference.
long double quartic(long double d, long double g, long double k) {
  const long double g2 = g * g, k2 = k * k;
  return d * d * d * d + 2 * d * d * (g2 + k2) + 4 * g2 * k * d + k2 * (k2 - 2 * g2);
}

// Roots located by sign changes on a dense grid and refined by bisection.
std::vector<double> bisection_roots(double g, double k) {
  std::vector<double> roots;
  const double lo = -4.0 * (g + k), hi = 4.0 * (g + k);
  const int n = 400000;
  long double prev = quartic(lo, g, k);
  for (int i = 1; i <= n; ++i) {
    const long double x = lo + (hi - lo) * i / n;
    const long double f = quartic(x, g, k);
    if (f == 0) {
      roots.push_back(double(x));
    } else if ((prev < 0) != (f < 0) && prev != 0) {
      long double a = lo + (hi - lo) * (i - 1) / n, b = x;
      for (int it = 0; it < 200; ++it) {
        const long double m = (a + b) / 2;
        if ((quartic(a, g, k) < 0) == (quartic(m, g, k) < 0))
          a = m;
        else
          b = m;
      }
      roots.push_back(double((a + b) / 2));
    }
    prev = f;
  }
  return roots;
}

SystemParams degenerate(double g, double delta_a) {
  return SystemParams::degenerate_params(g, 1.0, delta_a);
}

}  // namespace

TEST(SqrtSwapDeltaA, Examples) {
  for (double g : {0.5, 1.0, 2.0}) EXPECT_DOUBLE_EQ(sqrt_swap_delta_a(g, 1.0, 0.0), 2 * g * g);
  EXPECT_NEAR(sqrt_swap_delta_a(1.0, 1.0, 0.2), 2.0 * 1.2 / 1.04 - 0.2, 1e-15);
  EXPECT_NEAR(sqrt_swap_delta_a(1.0, 1.0, 0.2), 2.10769230769, 1e-10);
}

TEST(SqrtSwapDeltaA, AlwaysGivesQuarterPi) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> g(0.1, 4.0), d(-3.0, 3.0), k(0.3, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double kk = k(rng), gg = g(rng) * kk, dd = d(rng) * kk;
    const SystemParams p = SystemParams::degenerate_params(gg, kk, sqrt_swap_delta_a(gg, kk, dd));
    EXPECT_NEAR(psi_phase(p, dd), kPi / 4, 1e-12);
  }
}

TEST(SwapDeltaA, Examples) {
  EXPECT_EQ(swap_delta_a(1.0, 1.0, 0.0), 0.0);
  EXPECT_NEAR(swap_delta_a(1.0, 1.0, 0.5), 0.3, 1e-15);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> g(0.1, 4.0), d(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double gg = g(rng), dd = d(rng);
    EXPECT_NEAR(psi_phase(degenerate(gg, swap_delta_a(gg, 1.0, dd)), dd), 0.0, 1e-12);
  }
}

TEST(NondegenerateTuning, ZeroSplittingIsResonantSqrtSwap) {
  const NondegenerateTuning t = nondegenerate_sqrt_swap(1.3, 1.0, 0.0);
  EXPECT_EQ(t.carrier_h, 0.0);
  EXPECT_DOUBLE_EQ(t.delta_h, 2 * 1.3 * 1.3);
  EXPECT_EQ(t.delta_v, t.delta_h);
  EXPECT_EQ(t.theta, 0.0);
}

TEST(NondegenerateTuning, SplittingTwo) {
  const NondegenerateTuning t = nondegenerate_sqrt_swap(1.0, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(t.carrier_h, -1.0);
  EXPECT_DOUBLE_EQ(t.delta_h, 2.0);  // 1 + 2/(1 + 1)
  EXPECT_DOUBLE_EQ(t.delta_v, 0.0);
  EXPECT_DOUBLE_EQ(t.theta, std::atan(2.0));
  const AdiabaticCoeffs c = adiabatic_coeffs(t.params(1.0, 1.0), t.carrier_h);
  EXPECT_LT(std::abs(c.alpha - Complex(0.5, -0.5)), 1e-12);
}

TEST(NondegenerateTuning, AlphaAlwaysSqrtSwap) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> g(0.2, 4.0), e(-3.0, 3.0), k(0.3, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double kk = k(rng), gg = g(rng) * kk, ee = e(rng) * kk;
    const NondegenerateTuning t = nondegenerate_sqrt_swap(gg, kk, ee);
    EXPECT_LT(std::abs(adiabatic_coeffs(t.params(gg, kk), t.carrier_h).alpha - Complex(0.5, -0.5)),
              1e-12);
    EXPECT_LT(residual(t.solution(), gg, kk), 1e-12);
  }
}

TEST(FirstOrderEpsilonError, Examples) {
  EXPECT_NEAR(first_order_epsilon_error(1.0 / std::sqrt(2.0), 1.0), 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(first_order_epsilon_error(1.0, 1.0), -0.125);
  EXPECT_GT(first_order_epsilon_error(0.6, 1.0), 0.0);
  EXPECT_LT(first_order_epsilon_error(0.8, 1.0), 0.0);
  double prev = first_order_epsilon_error(0.1, 1.0);
  for (double g = 0.2; g < 5; g += 0.1) {
    const double v = first_order_epsilon_error(g, 1.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(MisOverlap, Examples) {
  EXPECT_EQ(mis_overlap_penalty(0.0, 10.0), 0.0);
  EXPECT_NEAR(mis_overlap_penalty(1e-4, 10.0) / (1e-6 / 4), 1.0, 1e-6);
  EXPECT_NEAR(mis_overlap_penalty(0.2, 10.0), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(MisOverlap, MatchesNumericalGaussianOverlap) {
  for (double eps : {0.05, 0.2, 0.37}) {
    const double T = 10.0;
    const PulseSpec a{T, 0.0, Polarization::H, PulseShape::Gaussian};
    const PulseSpec b{T, eps, Polarization::H, PulseShape::Gaussian};
    const FrequencyGrid grid = make_grid_covering(a, eps);
    const Eigen::VectorXcd ca = sample_spectrum(a, grid), cb = sample_spectrum(b, grid);
    const Complex ov = grid.integrate(Eigen::VectorXcd(ca.conjugate().cwiseProduct(cb)));
    EXPECT_NEAR(mis_overlap_penalty(eps, T), 1.0 - std::norm(ov), 1e-12);
  }
}

TEST(Quartic, CoefficientsAscending) {
  const auto c = nonadiabatic_quartic(1.0, 1.0);
  EXPECT_DOUBLE_EQ(c(0), -1.0);
  EXPECT_DOUBLE_EQ(c(1), 4.0);
  EXPECT_DOUBLE_EQ(c(2), 4.0);
  EXPECT_DOUBLE_EQ(c(3), 0.0);
  EXPECT_DOUBLE_EQ(c(4), 1.0);
}

TEST(PolynomialRoots, KnownFactorization) {
  // Coefficients of (x - 1)(x - 2)(x + 3)(x^2 + 1), built by multiplying the factors out.
  std::vector<Complex> roots{1.0, 2.0, -3.0, {0, 1}, {0, -1}};
  std::vector<Complex> poly{1.0};
  for (auto r : roots) {
    std::vector<Complex> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= r * poly[i];
    }
    poly = next;
  }
  Eigen::VectorXd c(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) c(i) = poly[i].real();
  const auto real = real_roots(c);
  ASSERT_EQ(real.size(), 3u);
  EXPECT_NEAR(real[0], -3.0, 1e-12);
  EXPECT_NEAR(real[1], 1.0, 1e-12);
  EXPECT_NEAR(real[2], 2.0, 1e-12);
  EXPECT_EQ(polynomial_roots(c).size(), 5);
}

TEST(NonadiabaticSqrtSwap, MarginalCavityAllowsResonantTuning) {
  const double g = 1.0 / std::sqrt(2.0);
  const auto s = nonadiabatic_sqrt_swap(g, 1.0);
  const auto it = std::find_if(s.begin(), s.end(), [](const DetuningSolution& d) {
    return std::abs(d.carrier_detuning) < 1e-12;
  });
  ASSERT_NE(it, s.end());
  EXPECT_NEAR(it->atom_detuning, 1.0, 1e-12);
}

TEST(NonadiabaticSqrtSwap, ExactRootAtOneFifth) {
  const double g = std::sqrt(169.0 / 175.0);
  // The quartic vanishes at 1/5 in exact arithmetic: 1/625 + (2/25)(344/175) + (4/5)(169/175) - 163/175.
  const long double v = quartic(0.2L, std::sqrt(169.0L / 175.0L), 1.0L);
  EXPECT_LT(std::abs(double(v)), 1e-15);
  const auto s = nonadiabatic_sqrt_swap(g, 1.0);
  const auto it = std::find_if(s.begin(), s.end(), [](const DetuningSolution& d) {
    return std::abs(d.carrier_detuning - 0.2) < 1e-12;
  });
  ASSERT_NE(it, s.end());
  EXPECT_LT(residual(*it, g, 1.0), 1e-12);
}

TEST(NonadiabaticSqrtSwap, EmptyBelowThreshold) {
  EXPECT_TRUE(nonadiabatic_sqrt_swap(std::sqrt(0.35), 1.0).empty());
}

TEST(NonadiabaticSqrtSwap, BranchesOrderedByDecreasingDetuning) {
  const auto s = nonadiabatic_sqrt_swap(1.0, 1.0);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].branch, 1);
  EXPECT_EQ(s[1].branch, 2);
  EXPECT_GT(s[0].carrier_detuning, s[1].carrier_detuning);
  EXPECT_NEAR(s[1].carrier_detuning, -1.0, 1e-12);
  EXPECT_NEAR(s[1].atom_detuning, 1.0, 1e-12);
}

TEST(NonadiabaticSqrtSwap, SolutionsSatisfyBothConditions) {
  for (double two_g2 = good_cavity_threshold() * 1.001; two_g2 < 10.0; two_g2 *= 1.07) {
    const double g = std::sqrt(two_g2 / 2);
    for (const auto& s : nonadiabatic_sqrt_swap(g, 1.0)) {
      const SystemParams p = degenerate(g, s.atom_detuning);
      EXPECT_LT(residual(s, g, 1.0), 1e-10);
      EXPECT_LT(infidelity_quadratic_term(p, s.carrier_detuning), 1e-10);
      EXPECT_NEAR(psi_phase(p, s.carrier_detuning), kPi / 4, 1e-10);
    }
  }
}

TEST(NonadiabaticSqrtSwap, RootsAgreeWithBisection) {
  for (double two_g2 = 0.8; two_g2 <= 4.0; two_g2 += 0.1) {
    const double g = std::sqrt(two_g2 / 2);
    const auto ref = bisection_roots(g, 1.0);
    const auto found = nonadiabatic_sqrt_swap(g, 1.0);
    ASSERT_EQ(found.size(), ref.size()) << "2g^2=" << two_g2;
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(found[ref.size() - 1 - i].carrier_detuning, ref[i], 1e-8);
  }
}

TEST(NonadiabaticSqrtSwap, RootCountChangesOnlyAtThreshold) {
  const double thr = good_cavity_threshold();
  std::size_t prev = nonadiabatic_sqrt_swap(std::sqrt(0.25), 1.0).size();
  for (double two_g2 = 0.5; two_g2 <= 4.0; two_g2 += 1e-3) {
    const std::size_t n = nonadiabatic_sqrt_swap(std::sqrt(two_g2 / 2), 1.0).size();
    if (n != prev) {
      EXPECT_LE(two_g2 - 1e-3, thr) << "count changed at 2g^2=" << two_g2;
      EXPECT_GE(two_g2, thr);
    }
    EXPECT_EQ(n == 0, two_g2 < thr);
    prev = n;
  }
}

TEST(Threshold, ValueAndBracketing) {
  const double thr = good_cavity_threshold();
  EXPECT_NEAR(thr, 12 * std::sqrt(3.0) - 20, 1e-15);
  EXPECT_NEAR(thr, 0.785, 5e-4);
  EXPECT_FALSE(nonadiabatic_sqrt_swap(std::sqrt(thr * (1 + 1e-6) / 2), 1.0).empty());
  EXPECT_TRUE(nonadiabatic_sqrt_swap(std::sqrt(thr * (1 - 1e-6) / 2), 1.0).empty());
}

TEST(SwapNonadiabatic, UnitCoupling) {
  const auto s = swap_nonadiabatic_delta(1.0, 1.0);
  ASSERT_EQ(s.size(), 2u);
  const double expected = std::sqrt(std::sqrt(5.0) - 2.0);
  EXPECT_NEAR(s[0].carrier_detuning, expected, 1e-14);
  EXPECT_NEAR(s[1].carrier_detuning, -expected, 1e-14);
  EXPECT_NEAR(expected, 0.48587, 1e-5);
  for (const auto& d : s) {
    const SystemParams p = degenerate(1.0, d.atom_detuning);
    EXPECT_LT(infidelity_quadratic_term(p, d.carrier_detuning), 1e-10);
    EXPECT_NEAR(psi_phase(p, d.carrier_detuning), 0.0, 1e-12);
  }
}

TEST(SwapNonadiabatic, EmptyUnlessGoodCavity) {
  EXPECT_TRUE(swap_nonadiabatic_delta(std::sqrt(0.5), 1.0).empty());
  EXPECT_TRUE(swap_nonadiabatic_delta(0.3, 1.0).empty());
  EXPECT_EQ(swap_nonadiabatic_delta(std::sqrt(0.5) * 1.001, 1.0).size(), 2u);
}

TEST(SwapNonadiabatic, ZeroesInfidelityCoefficient) {
  for (double g = 0.75; g < 5.0; g += 0.25)
    for (const auto& d : swap_nonadiabatic_delta(g, 1.0)) {
      EXPECT_LT(infidelity_quadratic_term(degenerate(g, d.atom_detuning), d.carrier_detuning), 1e-10);
      EXPECT_LT(residual(d, g, 1.0), 1e-10);
    }
}

TEST(AdiabaticSolutions, Residuals) {
  for (double d : {-1.0, 0.0, 0.4}) {
    EXPECT_LT(residual(sqrt_swap_adiabatic(1.2, 1.0, d), 1.2, 1.0), 1e-12);
    EXPECT_LT(residual(swap_adiabatic(1.2, 1.0, d), 1.2, 1.0), 1e-12);
  }
  EXPECT_EQ(to_string(Condition::SqrtSwapNonAdiabatic), "sqrt-swap-nonadiabatic");
}
