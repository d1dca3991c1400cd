#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "h3body/biquaternion.hpp"

namespace h3body {

/// Point of the complex 3-sphere, quadratic_form(q) = 1.
class SpherePoint {
 public:
  /// Throws ConstraintViolation if |quadratic_form(q) - 1| >= 1e-10.
  explicit SpherePoint(const Biquaternion& q);
  const Biquaternion& value() const { return q_; }

 private:
  Biquaternion q_;
};

/// Point (t, x, y, z) of the hyperboloid t^2 - x^2 - y^2 - z^2 = 1, t >= 1.
/// As a biquaternion it is (t, ix, iy, iz), a Hermitian unit-determinant matrix.
struct HyperbolicPoint {
  double t = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Biquaternion biquaternion() const;

  /// Validates Hermitian structure, t >= 1 and the hyperboloid relation
  /// (relative to t^2 so far-out orbit points are accepted).
  static HyperbolicPoint from_biquaternion(const Biquaternion& q, double tol = 1e-10);
  /// Point at the given spatial coordinates; t is solved for.
  static HyperbolicPoint from_spatial(double x, double y, double z);
  /// e^{psi j} = cosh psi + j sinh psi on the geodesic H1.
  static HyperbolicPoint on_axis(double psi);

  /// |t^2 - x^2 - y^2 - z^2 - 1| / max(1, t^2).
  double constraint_drift() const;
};

/// Poincare ball coordinates; X is the vertical axis in renders.
struct BallPoint {
  double X = 0.0, Y = 0.0, Z = 0.0;
  double norm() const;
};

struct GroupPair {
  Biquaternion g1 = Biquaternion::one();
  Biquaternion g2 = Biquaternion::one();
};

/// Drift of a biquaternion from the hyperboloid: Hermitian defect plus
/// relative Minkowski defect.
double hyperboloid_drift(const Biquaternion& q);

SpherePoint real_structure_r(const SpherePoint& q);

/// (q, p) -> (q^dagger, p^dagger). Throws ConstraintViolation if |<q,p>| > 1e-8.
std::pair<SpherePoint, Biquaternion> cotangent_lift_R(const SpherePoint& q, const Biquaternion& p);

/// (g1, g2) -> (dagger(g2^-1), dagger(g1^-1)).
GroupPair rho(const GroupPair& g);
GroupPair compose(const GroupPair& a, const GroupPair& b);

/// g1 Q g2^-1.
Biquaternion act_lr(const GroupPair& g, const Biquaternion& Q);

/// g Q g^dagger on an arbitrary biquaternion (used for momenta as well).
Biquaternion conjugate_action(const Biquaternion& g, const Biquaternion& Q);
HyperbolicPoint act_hyperbolic(const Biquaternion& g, const HyperbolicPoint& Q);

BallPoint to_poincare_ball(const HyperbolicPoint& Q);
HyperbolicPoint from_poincare_ball(const BallPoint& b);

/// arccosh <q1, q2>; zero for pairings within 1e-12 of 1.
double hyperbolic_distance(const HyperbolicPoint& q1, const HyperbolicPoint& q2);
/// Same for raw biquaternions; throws NonRealPairing if Im<q1,q2> > 1e-10.
double hyperbolic_distance(const Biquaternion& q1, const Biquaternion& q2);

enum class OrbitKind { elliptic, hyperbolic, loxodromic, parabolic };

OrbitKind parse_orbit_kind(std::string_view name);
std::string_view to_string(OrbitKind kind);

/// Generator for an orbit kind. eta must be imaginary (elliptic), real
/// (hyperbolic) or have both parts nonzero (loxodromic); eta is ignored for
/// parabolic. Throws KindMismatch otherwise.
SL2Generator orbit_generator(OrbitKind kind, cplx eta);

/// exp(t xi) base exp(t xi)^dagger for each t, as raw biquaternions.
std::vector<Biquaternion> orbit_points(OrbitKind kind, cplx eta, const HyperbolicPoint& base,
                                       const std::vector<double>& times);

/// Orbit mapped to the Poincare ball.
std::vector<BallPoint> one_param_orbit(OrbitKind kind, cplx eta, const HyperbolicPoint& base,
                                       const std::vector<double>& times);

}  // namespace h3body
