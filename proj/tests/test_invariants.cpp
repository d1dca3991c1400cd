#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "h3body/equilibria.hpp"
#include "h3body/invariants.hpp"
#include "support.hpp"

using namespace h3body;
namespace t = h3body::testing;

namespace {

ReducedState random_reduced() {
  return {imag_part(t::random_biquaternion()), imag_part(t::random_biquaternion()), t::random_unit()};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Invariants, DeltaSquaredIsDetK) {
  for (int k = 0; k < 2000; ++k) {
    const auto p = project_pi(random_reduced());
    EXPECT_LT(rel(p.delta * p.delta, p.det_k()), 1e-9);
  }
}

TEST(Invariants, DeltaSquaredAlongTrajectory) {
  const Masses m(1.0, 2.0);
  const auto pot = potential_gravitational(m);
  const auto s0 = t::random_complex_phase_point(0.02);
  IntegratorOptions o;
  o.dt = 1e-3;
  o.t_end = 1.0;
  const auto traj = integrate(reduce_right(s0), m, pot, o);
  for (std::size_t i = 0; i < traj.states.size(); i += 100) {
    const auto p = project_pi(traj.states[i]);
    EXPECT_LT(rel(p.delta * p.delta, p.det_k()), 1e-9);
  }
}

TEST(Invariants, ProjectionIsConstantOnResidualOrbits) {
  for (int k = 0; k < 500; ++k) {
    const auto r = random_reduced();
    const auto g = t::random_unit(0.8);
    const auto a = project_pi(r), b = project_pi(residual_action(g, r));
    for (auto [x, y] : {std::pair{a.k11, b.k11}, {a.k12, b.k12}, {a.k13, b.k13}, {a.k22, b.k22},
                        {a.k23, b.k23}, {a.k33, b.k33}, {a.delta, b.delta}, {a.z, b.z}})
      EXPECT_LT(rel(x, y), 1e-10);
  }
}

TEST(Invariants, RelativeEquilibriaAreStablePoints) {
  const Masses m(1.0, 2.0);
  const auto pot = potential_gravitational(m);
  for (int k = 0; k < 50; ++k) {
    const auto c = construct_re({t::uniform(0, std::numbers::pi), t::uniform(0.05, 4), m}, pot);
    const auto r = reduced_state(c);
    EXPECT_TRUE(is_stable_point(r.L1, r.L2, imag_part(r.qR)));
  }
  const auto I = Biquaternion::unit_i();
  EXPECT_FALSE(is_stable_point(I, 2.0 * I, 3.0 * I));
  EXPECT_FALSE(is_stable_point(Biquaternion::unit_j() + cplx(0, 1) * Biquaternion::unit_k(), I,
                               Biquaternion::unit_j()));
}

TEST(Invariants, ConjugationSolver) {
  for (int k = 0; k < 100; ++k) {
    const auto r = random_reduced();
    const auto g = t::random_unit(0.8);
    const auto target = residual_action(g, r);
    const auto h = solve_conjugation(r, target);
    ASSERT_TRUE(h.has_value());
    EXPECT_LT(t::distance(residual_action(*h, r), target), 1e-9);
  }
  EXPECT_FALSE(solve_conjugation(random_reduced(), random_reduced()).has_value());
}

TEST(Invariants, EqualInvariantsOnRealFormAreConjugate) {
  // Two real-form states with the same invariants: the second is a rotated copy
  // of the first, and the solver recovers a real (unitary) rotation.
  for (int k = 0; k < 50; ++k) {
    const auto s = t::random_real_phase_point(0.5);
    const auto r = reduce_right(s);
    const Biquaternion axis{0.0, t::uniform(-1, 1), t::uniform(-1, 1), t::uniform(-1, 1)};
    const auto u = exp_generator(SL2Generator(axis), t::uniform(-2, 2));
    const auto r2 = residual_action(u, r);
    const auto a = project_pi(r), b = project_pi(r2);
    EXPECT_LT(rel(a.k12, b.k12) + rel(a.delta, b.delta) + rel(a.z, b.z), 1e-10);
    const auto h = solve_conjugation(r, r2);
    ASSERT_TRUE(h.has_value());
    EXPECT_LT(t::distance(residual_action(*h, r), r2), 1e-9);
    EXPECT_LT(coeff_norm(dagger(*h) * *h - Biquaternion::one()), 1e-8);
  }
}

TEST(Invariants, CasimirJacobianDegeneratesWithGamma) {
  const Masses m(1.0, 2.0);
  const double theta = std::numbers::pi / 2;
  const double pc = *psi_crit(theta, m);
  auto det = [&](double psi) {
    const auto J = casimir_jacobian(theta, psi, m);
    return J[0][0] * J[1][1] - J[0][1] * J[1][0];
  };
  EXPECT_LT(det(pc - 0.05) * det(pc + 0.05), 0.0);
  const auto sv_crit = singular_values(casimir_jacobian(theta, pc, m));
  const auto sv_off = singular_values(casimir_jacobian(theta, pc + 0.5, m));
  EXPECT_LT(sv_crit[1] / sv_crit[0], 1e-5);
  EXPECT_GT(sv_off[1] / sv_off[0], 1e-3);
  const auto sv = singular_values({{{3.0, 0.0}, {0.0, -2.0}}});
  EXPECT_NEAR(sv[0], 3.0, 1e-14);
  EXPECT_NEAR(sv[1], 2.0, 1e-14);
}

TEST(Invariants, MassSwapSymmetryOfDiagram) {
  const auto a = ec_diagram(Masses(1.0, 2.0), 8, 0.2, 2.0, 6);
  const auto b = ec_diagram(Masses(2.0, 1.0), 8, 0.2, 2.0, 6);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_NEAR(a[k].point.H, b[k].point.H, 1e-12 * std::abs(a[k].point.H));
    EXPECT_NEAR(a[k].point.C_re, b[k].point.C_re, 1e-12 * std::max(1.0, std::abs(a[k].point.C_re)));
    EXPECT_NEAR(a[k].point.C_im, b[k].point.C_im, 1e-12 * std::max(1.0, std::abs(a[k].point.C_im)));
  }
}

class Linearize : public ::testing::Test {
 protected:
  Masses m{1.0, 2.0};
  Potential pot = potential_gravitational(m);

  Linearization at(double theta, double psi) { return linearize_at_re(construct_re({theta, psi, m}, pot), m, pot); }
};

TEST_F(Linearize, StableSideIsElliptic) {
  for (double psi : {0.3, 0.8, 1.2}) {
    const auto L = at(std::numbers::pi / 2, psi);
    ASSERT_LT(gamma({std::numbers::pi / 2, psi, m}), 0.0);
    EXPECT_LT(L.max_abs_real_reduced(), 1e-6);
    EXPECT_EQ(L.reduced.size(), 4u);
  }
}

TEST_F(Linearize, UnstableSideHasRealPair) {
  for (double theta : {0.0, 0.5, 2.8}) {
    const auto L = at(theta, 1.0);
    EXPECT_GT(L.max_abs_real_reduced(), 1e-4);
  }
}

TEST_F(Linearize, GroupModes) {
  const auto c = construct_re({1.0, 0.7, m}, pot);
  const auto L = linearize_at_re(c, m, pot);
  ASSERT_EQ(L.group_modes.size(), 3u);
  std::vector<double> mags;
  for (auto z : L.group_modes) mags.push_back(std::abs(z));
  std::sort(mags.begin(), mags.end());
  EXPECT_LT(mags[0], 1e-6);
  EXPECT_NEAR(mags[1], 2 * std::abs(c.eta), 1e-6);
  EXPECT_NEAR(mags[2], 2 * std::abs(c.eta), 1e-6);
  EXPECT_EQ(L.full.size(), 10u);
}

TEST_F(Linearize, DegenerateCurveHasExtraZeroMode) {
  const double theta = std::numbers::pi / 2;
  const double pc = *psi_crit(theta, m);
  EXPECT_LT(at(theta, pc).degeneracy_ratio(), 1e-7);
  EXPECT_GT(at(theta, pc + 0.3).degeneracy_ratio(), 1e-4);
}
