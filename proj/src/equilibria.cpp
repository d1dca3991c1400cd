#include "h3body/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "h3body/errors.hpp"

namespace h3body {

namespace {

constexpr cplx kI{0.0, 1.0};

Biquaternion split_exp(double psi) {
  return Biquaternion::scalar(std::cosh(psi)) + std::sinh(psi) * Biquaternion::split_unit();
}

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string to_string(Stability s) {
  switch (s) {
    case Stability::LyapunovStable: return "LyapunovStable";
    case Stability::LinearlyUnstable: return "LinearlyUnstable";
    case Stability::Degenerate: return "Degenerate";
  }
  return "unknown";
}

double Z_factor(double psi, const Masses& m) {
  const double e2 = std::exp(2.0 * psi);
  return std::sqrt((m.m1 + m.m2 * e2) * (m.m2 + m.m1 * e2));
}

double zeta_closed_form(double psi, const Masses& m) {
  return m.m1 * m.m2 * std::exp(psi) * std::sinh(2.0 * psi) / Z_factor(psi, m);
}

std::pair<double, double> solve_chi(double psi, const Masses& m) {
  const double zeta = zeta_closed_form(psi, m);
  return {0.5 * std::asinh(zeta / m.m1), 0.5 * std::asinh(zeta / m.m2)};
}

REClassification construct_re(const REParams& p, const Potential& pot) {
  if (!(p.psi > 0.0)) {
    std::ostringstream os;
    os << "relative equilibria need separation psi > 0 (got " << p.psi << ")";
    throw DegenerateSeparation(os.str());
  }
  const Masses& m = p.masses;
  const double psi = p.psi;
  const double sh = std::sinh(psi);
  const cplx fz = pot.derivative(std::cosh(psi));
  if (!(fz.real() > 0.0) || std::abs(fz.imag()) > 1e-12 * std::abs(fz))
    throw InvalidInput("relative equilibria need a strictly attractive potential (f(cosh psi) > 0)");
  const double f = fz.real();

  REClassification c;
  c.theta = p.theta;
  c.psi = psi;
  c.zeta = zeta_closed_form(psi, m);
  std::tie(c.chi1, c.chi2) = solve_chi(psi, m);
  const double eta_abs = std::sqrt(f * sh / (2.0 * c.zeta));
  c.eta = std::polar(eta_abs, p.theta);
  c.generator = semisimple_generator(c.eta).value();
  c.q1 = HyperbolicPoint::on_axis(c.chi1);
  c.q2 = HyperbolicPoint::on_axis(-c.chi2);

  // Commutator equations: y from the L-equations, then the linear system for x1, x2.
  c.y = f * sh / (2.0 * c.eta);
  const double coth2 = 1.0 / std::tanh(2.0 * psi);
  const double csch2 = 1.0 / std::sinh(2.0 * psi);
  c.x1 = kI * c.y * (coth2 + m.m1 / m.m2 * csch2) + kI * m.m1 * c.eta;
  c.x2 = kI * c.y * (coth2 + m.m2 / m.m1 * csch2) + kI * m.m2 * c.eta;

  // Lifted velocities: x_s = i m_s (eta + conj(eta) cosh 2chi_s), y = m_s conj(eta) sinh 2chi_s.
  const cplx eb = std::conj(c.eta);
  const cplx x1v = kI * m.m1 * (c.eta + eb * std::cosh(2.0 * c.chi1));
  const cplx x2v = kI * m.m2 * (c.eta + eb * std::cosh(2.0 * c.chi2));
  const cplx y1v = m.m1 * eb * std::sinh(2.0 * c.chi1);
  const cplx y2v = m.m2 * eb * std::sinh(2.0 * c.chi2);
  c.derivation_gap = std::max({rel_gap(c.x1, x1v), rel_gap(c.x2, x2v), rel_gap(c.y, y1v), rel_gap(c.y, y2v)});
  if (c.derivation_gap > 1e-9) {
    std::ostringstream os;
    os << "relative-equilibrium derivations disagree (relative gap " << c.derivation_gap << ")";
    throw ResidualTooLarge(os.str());
  }

  c.L1 = c.x1 * Biquaternion::unit_i() + c.y * Biquaternion::unit_j();
  c.L2 = c.x2 * Biquaternion::unit_i() - c.y * Biquaternion::unit_j();
  return c;
}

ReducedState reduced_state(const REClassification& c) {
  return {c.L1, c.L2, split_exp(c.psi)};
}

double re_residual(const REClassification& c, const Masses& m, const Potential& pot) {
  const ReducedState r = reduced_state(c);
  const Biquaternion& S = c.generator;
  const cplx f = pot.derivative(r.qR.u());
  const Biquaternion im = imag_part(r.qR);
  const Biquaternion e1 = commutator(S, r.L1) - f * im;
  const Biquaternion e2 = commutator(S, r.L2) + f * im;
  const Biquaternion e3 = commutator(S, r.qR) + (r.L1 * r.qR) / m.m1 - (r.qR * r.L2) / m.m2;
  return std::max({max_abs(e1), max_abs(e2), max_abs(e3)});
}

double parabolic_residual(double psi, const Masses& m, const Potential& pot) {
  const double f = pot.derivative(std::cosh(psi)).real();
  return f * std::sinh(psi) * (m.m1 * std::exp(psi) + m.m2 * std::exp(-psi));
}

PhasePoint lift_to_phase(const REClassification& c, const Masses& m) {
  const Biquaternion& S = c.generator;
  const Biquaternion Sd = dagger(S);
  const Biquaternion q1 = c.q1.biquaternion();
  const Biquaternion q2 = c.q2.biquaternion();
  const Biquaternion p1 = -m.m1 * (S * q1 + q1 * Sd);
  const Biquaternion p2 = -m.m2 * (S * q2 + q2 * Sd);
  return {q1, p1, q2, p2};
}

double gamma(const REParams& p) {
  const Masses& m = p.masses;
  const double psi = p.psi;
  const double c2 = std::cosh(2.0 * psi);
  return (m.m1 + m.m2) * Z_factor(psi, m) * std::cos(2.0 * p.theta) +
         (1.0 + std::tanh(psi)) / (2.0 * std::cosh(psi)) * (m.m1 + m.m2 * c2) * (m.m2 + m.m1 * c2);
}

C0Terms c0_constant_term(const REParams& p, const Potential& pot) {
  const Masses& m = p.masses;
  const double psi = p.psi;
  const auto [chi1, chi2] = solve_chi(psi, m);
  const double f = pot.derivative(std::cosh(psi)).real();
  const double eta2 = f * std::sinh(psi) / (2.0 * zeta_closed_form(psi, m));
  const double cos2t = std::cos(2.0 * p.theta);

  C0Terms out;
  out.k11 = -2.0 * eta2 * m.m1 * m.m1 * (cos2t + std::cosh(2.0 * chi1));
  out.k22 = -2.0 * eta2 * m.m2 * m.m2 * (cos2t + std::cosh(2.0 * chi2));

  const double sh = std::sinh(psi);
  const double pre = 1.0 / (2.0 * sh * sh * sh * std::cosh(psi));
  const double zc = Z_factor(psi, m) * std::exp(-psi) * cos2t;
  const double c2 = std::cosh(2.0 * psi);
  out.k11_closed = -m.m1 * m.m1 * pre * (zc + m.m2 * c2 + m.m1);
  out.k22_closed = -m.m2 * m.m2 * pre * (zc + m.m1 * c2 + m.m2);

  // Trigonometric factors of the spherical formula read as hyperbolic functions of psi.
  const double a = (1.0 / std::tanh(psi)) / (sh * sh);
  const double d = out.k11 / (m.m1 * m.m1) - out.k22 / (m.m2 * m.m2);
  const double mid = out.k11 / m.m1 * (1.0 + m.m2 / m.m1) + out.k22 / m.m2 * (1.0 + m.m1 / m.m2);
  const double last = (m.m1 + m.m2) * a;
  out.c0 = d * d + 2.0 * a * mid + last * last;
  return out;
}

StabilityVerdict classify_stability(const REParams& p) {
  const Masses& m = p.masses;
  const double psi = p.psi;
  const double c2 = std::cosh(2.0 * psi);
  const double first = (m.m1 + m.m2) * Z_factor(psi, m) * std::abs(std::cos(2.0 * p.theta));
  const double second = (1.0 + std::tanh(psi)) / (2.0 * std::cosh(psi)) * (m.m1 + m.m2 * c2) * (m.m2 + m.m1 * c2);
  const double tol = 1e-10 * (first + second);

  StabilityVerdict v;
  v.gamma = gamma(p);
  if (v.gamma < -tol)
    v.kind = Stability::LyapunovStable;
  else if (v.gamma > tol)
    v.kind = Stability::LinearlyUnstable;
  else
    v.kind = Stability::Degenerate;
  return v;
}

namespace {

template <typename Fn>
double bisect(Fn&& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> psi_crit(double theta, const Masses& m, double psi_max) {
  auto g = [&](double psi) { return gamma({theta, psi, m}); };
  constexpr int kSamples = 2000;
  const double lo = 1e-3;
  std::optional<double> root;
  double prev_psi = lo;
  double prev = g(lo);
  for (int k = 1; k <= kSamples; ++k) {
    const double psi = lo + (psi_max - lo) * k / kSamples;
    const double val = g(psi);
    if ((val < 0.0) != (prev < 0.0)) root = bisect(g, prev_psi, psi);
    prev = val;
    prev_psi = psi;
  }
  return root;
}

double gamma_root_theta(double psi, const Masses& m, double lo, double hi) {
  auto g = [&](double theta) { return gamma({theta, psi, m}); };
  if ((g(lo) < 0.0) == (g(hi) < 0.0)) {
    std::ostringstream os;
    os << "Gamma has constant sign on theta in [" << lo << ", " << hi << "] at psi = " << psi;
    throw NoBracket(os.str());
  }
  return bisect(g, lo, hi);
}

}  // namespace h3body
