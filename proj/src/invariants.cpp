#include "h3body/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "h3body/sweep.hpp"

namespace h3body {

cplx InvariantPoint::det_k() const {
  return k11 * (k22 * k33 - k23 * k23) - k12 * (k12 * k33 - k23 * k13) + k13 * (k12 * k23 - k22 * k13);
}

InvariantPoint project_pi(const ReducedState& r) {
  const Biquaternion& v1 = r.L1;
  const Biquaternion& v2 = r.L2;
  const Biquaternion v3 = imag_part(r.qR);
  InvariantPoint p;
  p.k11 = bilinear(v1, v1);
  p.k12 = bilinear(v1, v2);
  p.k13 = bilinear(v1, v3);
  p.k22 = bilinear(v2, v2);
  p.k23 = bilinear(v2, v3);
  p.k33 = bilinear(v3, v3);
  p.delta = 0.5 * bilinear(v3, commutator(v1, v2));
  p.z = r.qR.u();
  return p;
}

ReducedState residual_action(const Biquaternion& g, const ReducedState& r) {
  const Biquaternion gi = inverse(g);
  return {g * r.L1 * gi, g * r.L2 * gi, g * r.qR * gi};
}

bool is_stable_point(const Biquaternion& v1, const Biquaternion& v2, const Biquaternion& v3) {
  constexpr double tol = 1e-10;
  const std::array<const Biquaternion*, 3> v{&v1, &v2, &v3};
  for (const auto* x : v) {
    const double n2 = frobenius_sq(*x);
    if (n2 == 0.0) continue;
    if (std::abs(quadratic_form(*x)) < tol * n2) return false;
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double scale = coeff_norm(*v[i]) * coeff_norm(*v[j]);
      if (coeff_norm(commutator(*v[i], *v[j])) >= tol * scale && scale > 0.0) return true;
    }
  }
  return false;
}

ECPoint energy_casimir(const ReducedState& r, const Masses& m, const Potential& pot) {
  const cplx c = quadratic_form(r.L1 + r.L2);
  return {reduced_hamiltonian(r, m, pot).real(), c.real(), c.imag()};
}

std::vector<ECSample> ec_diagram(const Masses& m, int theta_steps, double psi_lo, double psi_hi,
                                 int psi_steps) {
  return ec_sweep_parallel(m, make_grid(theta_steps, psi_lo, psi_hi, psi_steps));
}

namespace {

cplx casimir_at(double theta, double psi, const Masses& m, const Potential& pot) {
  const REClassification c = construct_re({theta, psi, m}, pot);
  return quadratic_form(c.L1 + c.L2);
}

}  // namespace

std::array<std::array<double, 2>, 2> casimir_jacobian(double theta, double psi, const Masses& m, double h) {
  const Potential pot = potential_gravitational(m);
  const cplx dt = (casimir_at(theta + h, psi, m, pot) - casimir_at(theta - h, psi, m, pot)) / (2.0 * h);
  const cplx dp = (casimir_at(theta, psi + h, m, pot) - casimir_at(theta, psi - h, m, pot)) / (2.0 * h);
  return {{{dt.real(), dp.real()}, {dt.imag(), dp.imag()}}};
}

std::array<double, 2> singular_values(const std::array<std::array<double, 2>, 2>& a) {
  const double fro2 = a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1];
  const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double s1 = std::sqrt(0.5 * (fro2 + disc));
  const double s2 = s1 > 0.0 ? std::abs(det) / s1 : 0.0;
  return {s1, s2};
}

std::optional<Biquaternion> solve_conjugation(const ReducedState& from, const ReducedState& to) {
  // g v = v' g for each frame vector, linear in the 4 coefficients of g.
  const std::array<Biquaternion, 3> a{from.L1, from.L2, imag_part(from.qR)};
  const std::array<Biquaternion, 3> b{to.L1, to.L2, imag_part(to.qR)};
  Eigen::Matrix<cplx, 12, 4> sys;
  for (int col = 0; col < 4; ++col) {
    Biquaternion e;
    e[col] = 1.0;
    for (int i = 0; i < 3; ++i) {
      const Biquaternion r = e * a[i] - b[i] * e;
      for (int k = 0; k < 4; ++k) sys(4 * i + k, col) = r[k];
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix<cplx, 12, 4>> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(3) > 1e-8 * std::max(1.0, sv(0))) return std::nullopt;
  const Eigen::Vector4cd g = svd.matrixV().col(3);
  Biquaternion q{g(0), g(1), g(2), g(3)};
  const cplx n = quadratic_form(q);
  if (std::abs(n) < 1e-12) return std::nullopt;
  return q / std::sqrt(n);
}

}  // namespace h3body
