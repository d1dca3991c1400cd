#include "h3body/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "h3body/errors.hpp"

namespace h3body {

PhaseInvariantReport check_invariants(const PhasePoint& s) {
  PhaseInvariantReport r;
  r.sphere_drift = std::max(std::abs(quadratic_form(s.q1) - 1.0), std::abs(quadratic_form(s.q2) - 1.0));
  r.cotangent_drift = std::max(std::abs(bilinear(s.q1, s.p1)), std::abs(bilinear(s.q2, s.p2)));
  return r;
}

void validate(const PhasePoint& s, double collision_eps) {
  const auto rep = check_invariants(s);
  if (rep.sphere_drift >= 1e-9 || rep.cotangent_drift >= 1e-9) {
    std::ostringstream os;
    os << "phase point violates constraints: |qf(q)-1| = " << rep.sphere_drift
       << ", |<q,p>| = " << rep.cotangent_drift;
    throw ConstraintViolation(os.str());
  }
  const cplx z = bilinear(s.q1, s.q2);
  if (std::abs(z * z - 1.0) < collision_eps) throw ConstraintViolation("particles collide (<q1,q2>^2 = 1)");
}

cplx hamiltonian(const PhasePoint& s, const Masses& m, const Potential& V) {
  return -quadratic_form(s.p1) / (2.0 * m.m1) - quadratic_form(s.p2) / (2.0 * m.m2) +
         V.value(bilinear(s.q1, s.q2));
}

cplx reduced_hamiltonian(const ReducedState& r, const Masses& m, const Potential& V) {
  return -quadratic_form(r.L1) / (2.0 * m.m1) - quadratic_form(r.L2) / (2.0 * m.m2) +
         V.value(r.qR.u());
}

Biquaternion left_momentum(const Biquaternion& q, const Biquaternion& p) { return p * inverse(q); }

Biquaternion right_momentum(const Biquaternion& q, const Biquaternion& p) { return inverse(q) * p; }

MomentumMap momentum_map_J(const PhasePoint& s) {
  return {left_momentum(s.q1, s.p1) + left_momentum(s.q2, s.p2),
          -(right_momentum(s.q1, s.p1) + right_momentum(s.q2, s.p2))};
}

ReducedState reduce_right(const PhasePoint& s) {
  return {left_momentum(s.q1, s.p1), left_momentum(s.q2, s.p2), s.q1 * inverse(s.q2)};
}

PhasePoint right_translate(const PhasePoint& s, const Biquaternion& g) {
  return {s.q1 * g, s.p1 * g, s.q2 * g, s.p2 * g};
}

ReducedTangent reduced_vector_field(const ReducedState& r, const Masses& m, const Potential& pot) {
  const cplx f = pot.derivative(r.qR.u());
  const Biquaternion im = imag_part(r.qR);
  return {f * im, -f * im, -(r.L1 * r.qR) / m.m1 + (r.qR * r.L2) / m.m2};
}

namespace {

// Dirac-bracket equations for one particle with dH/dq = hq, dH/dp = -p/m:
//   dq = hp - <q,hp> q
//   dp = -hq - q (<p,hp> - <q,hq>) + p <q,hp>
void particle_field(const Biquaternion& q, const Biquaternion& p, double mass,
                    const Biquaternion& hq, Biquaternion& dq, Biquaternion& dp) {
  const Biquaternion hp = p * cplx(-1.0 / mass);
  const cplx q_hp = bilinear(q, hp);
  dq = hp - q_hp * q;
  dp = -hq - (bilinear(p, hp) - bilinear(q, hq)) * q + q_hp * p;
}

}  // namespace

PhaseTangent phase_vector_field(const PhasePoint& s, const Masses& m, const Potential& pot) {
  const cplx f = pot.derivative(bilinear(s.q1, s.q2));
  PhaseTangent d;
  particle_field(s.q1, s.p1, m.m1, f * s.q2, d.dq1, d.dp1);
  particle_field(s.q2, s.p2, m.m2, f * s.q1, d.dq2, d.dp2);
  return d;
}

PhasePoint real_structure_R(const PhasePoint& s) {
  return {dagger(s.q1), dagger(s.p1), dagger(s.q2), dagger(s.p2)};
}

double real_form_deviation(const PhasePoint& s) {
  const PhasePoint r = real_structure_R(s);
  return std::max({max_abs(s.q1 - r.q1), max_abs(s.p1 - r.p1), max_abs(s.q2 - r.q2),
                   max_abs(s.p2 - r.p2)});
}

Method parse_method(const std::string& name) {
  if (name == "rk4") return Method::rk4;
  if (name == "dopri") return Method::dopri;
  throw InvalidInput("unknown integrator '" + name + "' (expected rk4 or dopri)");
}

std::string to_string(Method m) { return m == Method::rk4 ? "rk4" : "dopri"; }

namespace {

// Component of v orthogonal (Minkowski) to the unit timelike q.
Biquaternion tangent_part(const Biquaternion& v, const Biquaternion& q) {
  return v - bilinear(q, v) * q;
}

bool parallel_to(const Biquaternion& p, const Biquaternion& dir, double tol) {
  const double pn = coeff_norm(p);
  if (pn == 0.0) return true;
  const cplx dd = bilinear(dir, dir);
  if (std::abs(dd) == 0.0) return false;
  const Biquaternion resid = p - (bilinear(p, dir) / dd) * dir;
  return coeff_norm(resid) <= tol * pn;
}

}  // namespace

MomentumCriticality momentum_criticality(const PhasePoint& s) {
  MomentumCriticality out;
  const Biquaternion along1 = tangent_part(s.q2, s.q1);
  const Biquaternion along2 = tangent_part(s.q1, s.q2);
  out.is_critical = parallel_to(s.p1, along1, 1e-8) && parallel_to(s.p2, along2, 1e-8);
  out.ctot_sq = quadratic_form(momentum_map_J(s).left);
  out.coplanar = std::abs(out.ctot_sq.imag()) < 1e-9;
  return out;
}

}  // namespace h3body
