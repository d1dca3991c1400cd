#pragma once

#include <optional>
#include <string>
#include <utility>

#include "h3body/biquaternion.hpp"
#include "h3body/dynamics.hpp"
#include "h3body/geometry.hpp"

namespace h3body {

/// Conjugacy class of a semisimple relative equilibrium: phase theta = arg eta
/// in [0, pi) and separation psi > 0.
struct REParams {
  double theta = 0.0;
  double psi = 1.0;
  Masses masses;
};

struct REClassification {
  double theta = 0.0, psi = 0.0;
  double chi1 = 0.0, chi2 = 0.0;
  cplx eta;
  double zeta = 0.0;
  cplx y, x1, x2;
  HyperbolicPoint q1, q2;
  Biquaternion L1, L2;
  Biquaternion generator;  // S = -i eta I
  /// Relative gap between the commutator-equation solution for (x1, x2, y)
  /// and the one read off from the lifted velocities.
  double derivation_gap = 0.0;
};

enum class Stability { LyapunovStable, LinearlyUnstable, Degenerate };

std::string to_string(Stability s);

struct StabilityVerdict {
  double gamma = 0.0;
  Stability kind = Stability::Degenerate;
};

/// zeta = m1 m2 e^psi sinh(2 psi) / Z, Z = sqrt((m1 + m2 e^{2psi})(m2 + m1 e^{2psi})).
double zeta_closed_form(double psi, const Masses& m);
double Z_factor(double psi, const Masses& m);

/// chi_s = asinh(zeta / m_s) / 2.
std::pair<double, double> solve_chi(double psi, const Masses& m);

/// Builds the relative equilibrium and cross-checks the two derivations of
/// (x1, x2, y). Throws DegenerateSeparation for psi <= 0 and InvalidInput
/// for a potential whose derivative is not real positive at cosh psi.
REClassification construct_re(const REParams& p, const Potential& pot);

/// Max coefficient of the residuals of the three defining commutator
/// equations at qR = e^{psi j}.
double re_residual(const REClassification& c, const Masses& m, const Potential& pot);

/// f(cosh psi) sinh psi (m1 e^psi + m2 e^-psi), the obstruction to parabolic RE.
double parabolic_residual(double psi, const Masses& m, const Potential& pot);

/// p_s = -m_s (S q_s + q_s S^dagger).
PhasePoint lift_to_phase(const REClassification& c, const Masses& m);

/// Reduced state (L1, L2, e^{psi j}) of the classification.
ReducedState reduced_state(const REClassification& c);

double gamma(const REParams& p);

struct C0Terms {
  double c0 = 0.0;
  double k11 = 0.0, k22 = 0.0;                 // -2|eta|^2 m_s^2 (cos 2theta + cosh 2chi_s)
  double k11_closed = 0.0, k22_closed = 0.0;   // Z-form rewrite
};

/// Constant term of the characteristic polynomial of the reduced
/// linearization (gravitational case), with k11, k22 by both routes.
C0Terms c0_constant_term(const REParams& p, const Potential& pot);

StabilityVerdict classify_stability(const REParams& p);

/// Largest psi in (psi_min, psi_max] where Gamma(theta, .) changes sign,
/// refined by bisection; nullopt if Gamma keeps one sign.
std::optional<double> psi_crit(double theta, const Masses& m, double psi_max = 10.0);

/// Bisection for Gamma(., psi) = 0 in theta over [lo, hi]. Throws NoBracket.
double gamma_root_theta(double psi, const Masses& m, double lo, double hi);

}  // namespace h3body
