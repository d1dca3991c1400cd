#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "h3body/biquaternion.hpp"

namespace h3body {

struct Masses {
  double m1 = 1.0;
  double m2 = 1.0;

  /// Throws InvalidInput unless both masses are strictly positive.
  Masses(double m1_, double m2_);
  Masses() = default;
};

/// Holomorphic potential V(z) of z = <q1, q2> together with f = dV/dz.
class Potential {
 public:
  using Fn = std::function<cplx(cplx)>;

  Potential(std::string name, Fn value, Fn derivative, bool attractive)
      : name_(std::move(name)), value_(std::move(value)), derivative_(std::move(derivative)),
        attractive_(attractive) {}

  cplx value(cplx z) const { return value_(z); }
  cplx derivative(cplx z) const { return derivative_(z); }
  bool attractive() const { return attractive_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn value_;
  Fn derivative_;
  bool attractive_;
};

/// V(z) = -m1 m2 z / sqrt(z^2 - 1), f(z) = m1 m2 (z^2 - 1)^(-3/2), principal
/// branch, so V(cosh psi) = -m1 m2 coth psi. Throws BranchPoint at z^2 = 1.
Potential potential_gravitational(const Masses& m);

/// V(z) = sum_k c_k z^k with real coefficients.
Potential potential_polynomial(std::vector<double> coeffs);

struct PhasePoint {
  Biquaternion q1, p1, q2, p2;
};

struct ReducedState {
  Biquaternion L1, L2, qR;
};

struct PhaseInvariantReport {
  double sphere_drift = 0.0;   // max_k |qf(q_k) - 1|
  double cotangent_drift = 0.0;  // max_k |<q_k, p_k>|
};

PhaseInvariantReport check_invariants(const PhasePoint& s);

/// Throws ConstraintViolation if a PhasePoint invariant fails (1e-9), or if
/// the particles collide (|<q1,q2>^2 - 1| below collision_eps).
void validate(const PhasePoint& s, double collision_eps = 1e-8);

/// -||p1||^2/2m1 - ||p2||^2/2m2 + V(<q1,q2>).
cplx hamiltonian(const PhasePoint& s, const Masses& m, const Potential& V);
/// -||L1||^2/2m1 - ||L2||^2/2m2 + V(<qR,1>).
cplx reduced_hamiltonian(const ReducedState& r, const Masses& m, const Potential& V);

/// p q^-1.
Biquaternion left_momentum(const Biquaternion& q, const Biquaternion& p);
/// q^-1 p.
Biquaternion right_momentum(const Biquaternion& q, const Biquaternion& p);

struct MomentumMap {
  Biquaternion left;   // L_tot
  Biquaternion right;  // -R_tot
};

MomentumMap momentum_map_J(const PhasePoint& s);

/// (L1, L2, q1 q2^-1).
ReducedState reduce_right(const PhasePoint& s);

/// Right-translate both particles: (q g, p g).
PhasePoint right_translate(const PhasePoint& s, const Biquaternion& g);

struct ReducedTangent {
  Biquaternion dL1, dL2, dqR;
};

ReducedTangent reduced_vector_field(const ReducedState& r, const Masses& m, const Potential& pot);

struct PhaseTangent {
  Biquaternion dq1, dp1, dq2, dp2;
};

/// Hamiltonian vector field on T*CS3 x T*CS3 with the constraints
/// qf(q)=1, <q,p>=0 enforced through the Dirac bracket.
PhaseTangent phase_vector_field(const PhasePoint& s, const Masses& m, const Potential& pot);

/// Cotangent lift of the real structure to both particles.
PhasePoint real_structure_R(const PhasePoint& s);
/// max coefficient of s - R(s); zero exactly on the real form.
double real_form_deviation(const PhasePoint& s);

enum class Method { rk4, dopri };

Method parse_method(const std::string& name);
std::string to_string(Method m);

struct IntegratorOptions {
  Method method = Method::rk4;
  double dt = 1e-3;      // fixed step (rk4) or initial step (dopri)
  double t_end = 1.0;
  double rtol = 1e-11;   // dopri only
  double atol = 1e-13;   // dopri only
  int max_rejections = 60;
  double blowup = 1e-6;  // pre-projection constraint drift that aborts the run
};

template <typename State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  double max_constraint_drift = 0.0;  // pre-projection drift, max over steps
  double max_energy_drift = 0.0;      // |H(t) - H(0)|
  double max_momentum_drift = 0.0;    // full: J = (L_tot, -R_tot); reduced: L1 + L2
  int rejected_steps = 0;
};

/// Integrates on the full space with post-step projection back onto the
/// constraint set. Throws ConstraintBlowup or StepRejected.
Trajectory<PhasePoint> integrate(const PhasePoint& initial, const Masses& m, const Potential& pot,
                                 const IntegratorOptions& opt);
Trajectory<ReducedState> integrate(const ReducedState& initial, const Masses& m,
                                   const Potential& pot, const IntegratorOptions& opt);

struct MomentumCriticality {
  bool is_critical = false;
  cplx ctot_sq;
  bool coplanar = false;
};

/// Criticality of the real-form momentum map: momenta tangent to the geodesic
/// through q1, q2 (angular tolerance 1e-8); coplanar when |Im ||C_tot||^2| < 1e-9.
MomentumCriticality momentum_criticality(const PhasePoint& s);

}  // namespace h3body
