#include "h3body/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "h3body/errors.hpp"

namespace h3body {

namespace {
constexpr double kKindTol = 1e-14;
}

SpherePoint::SpherePoint(const Biquaternion& q) : q_(q) {
  const double drift = std::abs(quadratic_form(q) - 1.0);
  if (drift >= 1e-10) {
    std::ostringstream os;
    os << "point is off the complex sphere: |qf - 1| = " << drift;
    throw ConstraintViolation(os.str());
  }
}

Biquaternion HyperbolicPoint::biquaternion() const {
  return {t, cplx(0.0, x), cplx(0.0, y), cplx(0.0, z)};
}

double HyperbolicPoint::constraint_drift() const {
  return std::abs(t * t - x * x - y * y - z * z - 1.0) / std::max(1.0, t * t);
}

double hyperboloid_drift(const Biquaternion& q) {
  const double scale = std::max(1.0, coeff_norm(q));
  const double herm = (std::abs(q.u().imag()) + std::abs(q.v().real()) + std::abs(q.w().real()) +
                       std::abs(q.z().real())) /
                      scale;
  const HyperbolicPoint h{q.u().real(), q.v().imag(), q.w().imag(), q.z().imag()};
  return herm + h.constraint_drift();
}

HyperbolicPoint HyperbolicPoint::from_biquaternion(const Biquaternion& q, double tol) {
  const HyperbolicPoint h{q.u().real(), q.v().imag(), q.w().imag(), q.z().imag()};
  if (hyperboloid_drift(q) > tol || h.t < 1.0 - tol) {
    std::ostringstream os;
    os << "biquaternion is not on H3 (drift " << hyperboloid_drift(q) << ", t = " << h.t << ")";
    throw ConstraintViolation(os.str());
  }
  return h;
}

HyperbolicPoint HyperbolicPoint::from_spatial(double x, double y, double z) {
  return {std::sqrt(1.0 + x * x + y * y + z * z), x, y, z};
}

HyperbolicPoint HyperbolicPoint::on_axis(double psi) {
  // cosh psi + j sinh psi with j = -iK gives z = -sinh psi.
  return {std::cosh(psi), 0.0, 0.0, -std::sinh(psi)};
}

double BallPoint::norm() const { return std::sqrt(X * X + Y * Y + Z * Z); }

SpherePoint real_structure_r(const SpherePoint& q) { return SpherePoint(dagger(q.value())); }

std::pair<SpherePoint, Biquaternion> cotangent_lift_R(const SpherePoint& q, const Biquaternion& p) {
  const double pairing = std::abs(bilinear(q.value(), p));
  if (pairing > 1e-8) {
    std::ostringstream os;
    os << "momentum is not cotangent: |<q,p>| = " << pairing;
    throw ConstraintViolation(os.str());
  }
  return {SpherePoint(dagger(q.value())), dagger(p)};
}

GroupPair rho(const GroupPair& g) { return {dagger(inverse(g.g2)), dagger(inverse(g.g1))}; }

GroupPair compose(const GroupPair& a, const GroupPair& b) { return {a.g1 * b.g1, a.g2 * b.g2}; }

Biquaternion act_lr(const GroupPair& g, const Biquaternion& Q) { return g.g1 * Q * inverse(g.g2); }

Biquaternion conjugate_action(const Biquaternion& g, const Biquaternion& Q) {
  return g * Q * dagger(g);
}

HyperbolicPoint act_hyperbolic(const Biquaternion& g, const HyperbolicPoint& Q) {
  const Biquaternion r = conjugate_action(g, Q.biquaternion());
  return {r.u().real(), r.v().imag(), r.w().imag(), r.z().imag()};
}

BallPoint to_poincare_ball(const HyperbolicPoint& Q) {
  const double d = 1.0 + Q.t;
  return {Q.x / d, Q.y / d, Q.z / d};
}

HyperbolicPoint from_poincare_ball(const BallPoint& b) {
  const double r2 = b.X * b.X + b.Y * b.Y + b.Z * b.Z;
  if (r2 >= 1.0) throw InvalidInput("ball point must lie strictly inside the unit ball");
  const double s = 1.0 / (1.0 - r2);
  return {(1.0 + r2) * s, 2.0 * b.X * s, 2.0 * b.Y * s, 2.0 * b.Z * s};
}

namespace {
double arccosh_guarded(double c) {
  if (c <= 1.0 + 1e-12) return 0.0;
  return std::log(c + std::sqrt(c * c - 1.0));
}
}  // namespace

double hyperbolic_distance(const HyperbolicPoint& a, const HyperbolicPoint& b) {
  return arccosh_guarded(a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z);
}

double hyperbolic_distance(const Biquaternion& q1, const Biquaternion& q2) {
  const cplx c = bilinear(q1, q2);
  if (std::abs(c.imag()) > 1e-10 * std::max(1.0, std::abs(c))) {
    std::ostringstream os;
    os << "pairing <q1,q2> is not real: imaginary part " << c.imag();
    throw NonRealPairing(os.str());
  }
  return arccosh_guarded(c.real());
}

OrbitKind parse_orbit_kind(std::string_view name) {
  if (name == "elliptic") return OrbitKind::elliptic;
  if (name == "hyperbolic") return OrbitKind::hyperbolic;
  if (name == "loxodromic") return OrbitKind::loxodromic;
  if (name == "parabolic") return OrbitKind::parabolic;
  throw InvalidInput("unknown orbit kind '" + std::string(name) +
                     "' (expected elliptic, hyperbolic, loxodromic or parabolic)");
}

std::string_view to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::elliptic: return "elliptic";
    case OrbitKind::hyperbolic: return "hyperbolic";
    case OrbitKind::loxodromic: return "loxodromic";
    case OrbitKind::parabolic: return "parabolic";
  }
  return "unknown";
}

SL2Generator orbit_generator(OrbitKind kind, cplx eta) {
  if (kind == OrbitKind::parabolic) return nilpotent_generator();

  const double scale = std::abs(eta);
  const bool re_zero = std::abs(eta.real()) <= kKindTol * scale;
  const bool im_zero = std::abs(eta.imag()) <= kKindTol * scale;
  auto mismatch = [&](const char* rule) {
    std::ostringstream os;
    os << to_string(kind) << " orbit requires " << rule << " (got eta = " << eta.real()
       << (eta.imag() < 0 ? "" : "+") << eta.imag() << "i)";
    throw KindMismatch(os.str());
  };
  if (scale == 0.0) mismatch("a nonzero eta");
  switch (kind) {
    case OrbitKind::elliptic:
      if (!re_zero) mismatch("eta purely imaginary");
      break;
    case OrbitKind::hyperbolic:
      if (!im_zero) mismatch("eta real");
      break;
    case OrbitKind::loxodromic:
      if (re_zero || im_zero) mismatch("eta with nonzero real and imaginary parts");
      break;
    case OrbitKind::parabolic:
      break;
  }
  return semisimple_generator(eta);
}

std::vector<Biquaternion> orbit_points(OrbitKind kind, cplx eta, const HyperbolicPoint& base,
                                       const std::vector<double>& times) {
  const SL2Generator gen = orbit_generator(kind, eta);
  const Biquaternion b = base.biquaternion();
  std::vector<Biquaternion> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(conjugate_action(exp_generator(gen, t), b));
  return out;
}

std::vector<BallPoint> one_param_orbit(OrbitKind kind, cplx eta, const HyperbolicPoint& base,
                                       const std::vector<double>& times) {
  std::vector<BallPoint> out;
  out.reserve(times.size());
  for (const auto& q : orbit_points(kind, eta, base, times))
    out.push_back(to_poincare_ball(HyperbolicPoint::from_biquaternion(q, 1e-9)));
  return out;
}

}  // namespace h3body
