#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "h3body/equilibria.hpp"
#include "h3body/errors.hpp"
#include "support.hpp"

using namespace h3body;
namespace t = h3body::testing;

namespace {

// Independent oracle for zeta: the separation condition chi1 + chi2 = psi
// solved by bisection.
double zeta_bisection(double psi, const Masses& m) {
  auto g = [&](double zeta) { return 0.5 * std::asinh(zeta / m.m1) + 0.5 * std::asinh(zeta / m.m2) - psi; };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0) hi *= 2;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(Equilibria, SymmetricMasses) {
  const Masses m(1.0, 1.0);
  const auto c = construct_re({1.5708, 1.0, m}, potential_gravitational(m));
  EXPECT_NEAR(c.chi1, 0.5, 1e-14);
  EXPECT_NEAR(c.chi2, 0.5, 1e-14);
  EXPECT_NEAR(c.zeta, std::sinh(1.0), 1e-14);
}

TEST(Equilibria, ZetaMatchesBisectionOracle) {
  for (double r : {1.0, 2.0, 10.0, 0.1})
    for (double psi : {0.05, 0.3, 1.0, 2.5, 5.0}) {
      const Masses m(1.0, r);
      const double z = zeta_closed_form(psi, m);
      EXPECT_NEAR(z, zeta_bisection(psi, m), 1e-10 * std::max(1.0, z)) << r << " " << psi;
      const auto [c1, c2] = solve_chi(psi, m);
      EXPECT_NEAR(c1 + c2, psi, 1e-12);
    }
}

TEST(Equilibria, HeavierBodyCloserToCentre) {
  const auto [c1, c2] = solve_chi(1.0, Masses(1.0, 5.0));
  EXPECT_GT(c1, c2);
}

TEST(Equilibria, ResidualAndDerivationsOnGrid) {
  for (double r : {1.0, 2.0, 10.0}) {
    const Masses m(1.0, r);
    const auto pot = potential_gravitational(m);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const double theta = std::numbers::pi * i / 16, psi = 0.1 + 2.9 * j / 15;
        const auto c = construct_re({theta, psi, m}, pot);
        EXPECT_LT(re_residual(c, m, pot), 1e-10);
        EXPECT_LT(c.derivation_gap, 1e-9);
        EXPECT_NEAR(std::arg(c.eta), theta, 1e-12);
      }
  }
}

TEST(Equilibria, LiftIsARelativeEquilibrium) {
  // Along a relative equilibrium q(t) = e^{tS} q e^{tS^dagger}, so the vector
  // field equals S q + q S^dagger and the momenta rotate the same way.
  const Masses m(1.0, 2.0);
  const auto pot = potential_gravitational(m);
  for (double theta : {0.0, 0.7, 1.5, 2.6}) {
    const auto c = construct_re({theta, 0.9, m}, pot);
    const auto s = lift_to_phase(c, m);
    EXPECT_NO_THROW(validate(s));
    EXPECT_EQ(real_form_deviation(s), 0.0);
    const auto X = phase_vector_field(s, m, pot);
    const Biquaternion& S = c.generator;
    const auto Sd = dagger(S);
    EXPECT_LT(coeff_norm(X.dq1 - (S * s.q1 + s.q1 * Sd)), 1e-12);
    EXPECT_LT(coeff_norm(X.dq2 - (S * s.q2 + s.q2 * Sd)), 1e-12);
    EXPECT_LT(coeff_norm(X.dp1 - (S * s.p1 + s.p1 * Sd)), 1e-12);
    EXPECT_LT(coeff_norm(X.dp2 - (S * s.p2 + s.p2 * Sd)), 1e-12);
  }
}

TEST(Equilibria, Errors) {
  const Masses m(1.0, 2.0);
  const auto pot = potential_gravitational(m);
  EXPECT_THROW(construct_re({0.0, 0.0, m}, pot), DegenerateSeparation);
  EXPECT_THROW(construct_re({0.0, -1.0, m}, pot), DegenerateSeparation);
  // dV/dz < 0: repulsive, no semisimple relative equilibrium.
  EXPECT_THROW(construct_re({0.0, 1.0, m}, potential_polynomial({0.0, -1.0})), InvalidInput);
}

TEST(Stability, UnstableWheneverCos2ThetaPositive) {
  const Masses m(1.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const double theta = t::uniform(-std::numbers::pi / 4, std::numbers::pi / 4) + (k % 2) * std::numbers::pi;
    const REParams p{theta, t::uniform(0.05, 5), Masses(t::uniform(0.1, 10), t::uniform(0.1, 10))};
    EXPECT_GT(gamma(p), 0.0);
    EXPECT_EQ(classify_stability(p).kind, Stability::LinearlyUnstable);
  }
  EXPECT_EQ(classify_stability({0.0, 1.0, m}).kind, Stability::LinearlyUnstable);
  EXPECT_EQ(classify_stability({std::numbers::pi / 2, 1.0, m}).kind, Stability::LyapunovStable);
}

TEST(Stability, C0GammaIdentity) {
  const Masses m(1.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const REParams p{t::uniform(0, std::numbers::pi), t::uniform(0.1, 3),
                     Masses(t::uniform(0.2, 5), t::uniform(0.2, 5))};
    const auto c = c0_constant_term(p, potential_gravitational(p.masses));
    const double expected = -2.0 * std::exp(-p.psi) * gamma(p) / std::pow(std::sinh(p.psi), 6);
    EXPECT_NEAR(c.c0, expected, 1e-8 * std::abs(expected));
    EXPECT_NEAR(c.k11, c.k11_closed, 1e-10 * std::abs(c.k11));
    EXPECT_NEAR(c.k22, c.k22_closed, 1e-10 * std::abs(c.k22));
  }
}

TEST(Stability, CriticalSeparation) {
  const Masses m(1.0, 2.0);
  EXPECT_FALSE(psi_crit(0.0, m).has_value());
  const double theta = std::numbers::pi / 2;
  const auto pc = psi_crit(theta, m);
  ASSERT_TRUE(pc.has_value());
  EXPECT_LT(std::abs(gamma({theta, *pc, m})), 1e-9);
  EXPECT_LT(gamma({theta, *pc - 0.01, m}) * gamma({theta, *pc + 0.01, m}), 0.0);
  EXPECT_EQ(classify_stability({theta, *pc, m}).kind, Stability::Degenerate);

  const double psi = 0.5 * *pc;
  const double root = gamma_root_theta(psi, m, std::numbers::pi / 4, std::numbers::pi / 2);
  EXPECT_LT(std::abs(gamma({root, psi, m})), 1e-9);
  EXPECT_THROW(gamma_root_theta(psi, m, 0.0, 0.1), NoBracket);
}

TEST(Parabolic, NoParabolicEquilibria) {
  for (int k = 0; k < 50; ++k) {
    const Masses m(t::uniform(0.01, 100), t::uniform(0.01, 100));
    const auto pot = potential_gravitational(m);
    for (int j = 0; j < 100; ++j) EXPECT_GT(parabolic_residual(0.05 + 4.95 * j / 99, m, pot), 0.0);
  }
}
