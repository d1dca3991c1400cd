#include "h3body/biquaternion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "h3body/errors.hpp"

namespace h3body {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Biquaternion& Biquaternion::operator+=(const Biquaternion& o) {
  for (std::size_t k = 0; k < 4; ++k) c_[k] += o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator-=(const Biquaternion& o) {
  for (std::size_t k = 0; k < 4; ++k) c_[k] -= o.c_[k];
  return *this;
}

Biquaternion& Biquaternion::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Biquaternion operator+(Biquaternion a, const Biquaternion& b) { return a += b; }
Biquaternion operator-(Biquaternion a, const Biquaternion& b) { return a -= b; }
Biquaternion operator-(const Biquaternion& a) { return {-a[0], -a[1], -a[2], -a[3]}; }
Biquaternion operator*(cplx s, Biquaternion a) { return a *= s; }
Biquaternion operator*(Biquaternion a, cplx s) { return a *= s; }
Biquaternion operator/(Biquaternion a, cplx s) { return a *= (1.0 / s); }
Biquaternion operator*(const Biquaternion& a, const Biquaternion& b) { return mul(a, b); }

cplx MatrixView::operator()(int row, int col) const {
  const auto& q = q_;
  if (row == 0) return col == 0 ? q.u() + kI * q.v() : q.w() + kI * q.z();
  return col == 0 ? -q.w() + kI * q.z() : q.u() - kI * q.v();
}

Eigen::Matrix2cd MatrixView::matrix() const {
  Eigen::Matrix2cd m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = (*this)(r, c);
  return m;
}

Eigen::Matrix2cd to_matrix(const Biquaternion& q) { return MatrixView(q).matrix(); }

Biquaternion from_matrix(const Eigen::Matrix2cd& m) {
  const cplx u = 0.5 * (m(0, 0) + m(1, 1));
  const cplx v = -0.5 * kI * (m(0, 0) - m(1, 1));
  const cplx w = 0.5 * (m(0, 1) - m(1, 0));
  const cplx z = -0.5 * kI * (m(0, 1) + m(1, 0));
  return {u, v, w, z};
}

Biquaternion mul(const Biquaternion& a, const Biquaternion& b) {
  return {
      a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
      a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
      a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
      a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
  };
}

cplx quadratic_form(const Biquaternion& q) {
  return q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
}

cplx bilinear(const Biquaternion& a, const Biquaternion& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Biquaternion dagger(const Biquaternion& q) {
  return {std::conj(q[0]), -std::conj(q[1]), -std::conj(q[2]), -std::conj(q[3])};
}

Biquaternion conjugate(const Biquaternion& q) { return {q[0], -q[1], -q[2], -q[3]}; }

Biquaternion inverse(const Biquaternion& q, double eps) {
  const cplx n = quadratic_form(q);
  if (std::abs(n) < eps) {
    std::ostringstream os;
    os << "biquaternion is singular: |quadratic_form| = " << std::abs(n);
    throw SingularBiquaternion(os.str());
  }
  return conjugate(q) / n;
}

Biquaternion imag_part(const Biquaternion& q) { return {0.0, q[1], q[2], q[3]}; }

Biquaternion commutator(const Biquaternion& a, const Biquaternion& b) {
  return mul(a, b) - mul(b, a);
}

double coeff_norm(const Biquaternion& q) {
  double s = 0.0;
  for (const auto& c : q.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

double max_abs(const Biquaternion& q) {
  double m = 0.0;
  for (const auto& c : q.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double frobenius_sq(const Biquaternion& q) {
  const double n = coeff_norm(q);
  return 2.0 * n * n;
}

SL2Generator::SL2Generator(const Biquaternion& xi) : xi_(xi) {
  const double scale = coeff_norm(xi);
  if (std::abs(xi.u()) > 1e-12 * std::max(scale, 1.0))
    throw InvalidInput("sl2 generator must be traceless (zero 1-component)");
  if (scale == 0.0)
    kind_ = GeneratorKind::zero;
  else if (std::abs(quadratic_form(xi)) < 1e-12 * frobenius_sq(xi))
    kind_ = GeneratorKind::nilpotent;
  else
    kind_ = GeneratorKind::semisimple;
}

SL2Generator semisimple_generator(cplx eta) {
  return SL2Generator(Biquaternion{0.0, -kI * eta, 0.0, 0.0});
}

SL2Generator nilpotent_generator() {
  return SL2Generator(Biquaternion{0.0, 0.0, 0.5, -0.5 * kI});
}

Biquaternion exp_generator(const SL2Generator& gen, double t) {
  const Biquaternion& xi = gen.value();
  if (gen.kind() != GeneratorKind::semisimple) return Biquaternion::one() + t * xi;

  // mu = (lambda t)^2. cosh(sqrt mu) and sinh(sqrt mu)/sqrt mu are entire in
  // mu, so the branch of the square root is irrelevant.
  const cplx mu = -quadratic_form(xi) * (t * t);
  cplx c, s;
  if (std::abs(mu) < 1e-8) {
    c = 1.0 + mu / 2.0 + mu * mu / 24.0;
    s = 1.0 + mu / 6.0 + mu * mu / 120.0;
  } else {
    const cplx lt = std::sqrt(mu);
    c = std::cosh(lt);
    s = std::sinh(lt) / lt;
  }
  return Biquaternion::scalar(c) + (s * t) * xi;
}

}  // namespace h3body
