#pragma once

#include <array>
#include <optional>
#include <vector>

#include "h3body/biquaternion.hpp"
#include "h3body/dynamics.hpp"
#include "h3body/equilibria.hpp"

namespace h3body {

/// Fully reduced coordinates in C^8.
struct InvariantPoint {
  cplx k11, k12, k13, k22, k23, k33;
  cplx delta;
  cplx z;

  cplx det_k() const;
};

struct ECPoint {
  double H = 0.0;
  double C_re = 0.0;
  double C_im = 0.0;
};

/// k_ij = <v_i, v_j>, delta = <v3, [v1, v2]> / 2, z = <qR, 1> with
/// (v1, v2, v3) = (L1, L2, Im qR). The half-bracket makes delta^2 = det k.
InvariantPoint project_pi(const ReducedState& r);

/// g (L1, L2, qR) g^-1.
ReducedState residual_action(const Biquaternion& g, const ReducedState& r);

/// Each nonzero v_i semisimple and the three not all pairwise commuting.
bool is_stable_point(const Biquaternion& v1, const Biquaternion& v2, const Biquaternion& v3);

/// (Re H, ||L1 + L2||^2).
ECPoint energy_casimir(const ReducedState& r, const Masses& m, const Potential& pot);

struct ECSample {
  double theta = 0.0, psi = 0.0;
  ECPoint point;
  double gamma = 0.0;
};

/// Energy-Casimir image of the relative-equilibrium family on a grid. theta
/// runs over [0, pi) in theta_steps cells, psi over [psi_lo, psi_hi]
/// inclusive in psi_steps points. Row-major in theta.
std::vector<ECSample> ec_diagram(const Masses& m, int theta_steps, double psi_lo, double psi_hi,
                                 int psi_steps);

/// Jacobian of (theta, psi) -> (C_re, C_im) restricted to the RE family, by
/// central differences; {{dRe/dtheta, dRe/dpsi}, {dIm/dtheta, dIm/dpsi}}.
std::array<std::array<double, 2>, 2> casimir_jacobian(double theta, double psi, const Masses& m,
                                                      double h = 1e-6);
/// Singular values (largest first) of a 2x2 real matrix.
std::array<double, 2> singular_values(const std::array<std::array<double, 2>, 2>& a);

struct Linearization {
  std::vector<cplx> reduced;        // 4 eigenvalues on the reduced leaf
  std::vector<cplx> group_modes;    // residual group-orbit directions: {0, +-2 eta}
  std::vector<cplx> casimir_modes;  // transverse to qf(qR), ||L_tot||^2, ||R_tot||^2
  std::vector<cplx> full;           // all 10 ambient eigenvalues

  double max_abs_real_reduced() const;
  /// min |lambda|^2 / max |lambda|^2 over the reduced spectrum.
  double degeneracy_ratio() const;
};

/// Linearization of X_H - [S, .] at a relative equilibrium by Richardson-refined
/// central differences (base step 1e-6) in the right-reduced coordinates.
/// Throws ResidualTooLarge if re_residual exceeds 1e-9.
Linearization linearize_at_re(const REClassification& c, const Masses& m, const Potential& pot);

/// Finds g in SL2C with g (L1, L2, qR) g^-1 = to, from the frame equations
/// g v_i = v_i' g. Returns nullopt if no such g exists.
std::optional<Biquaternion> solve_conjugation(const ReducedState& from, const ReducedState& to);

}  // namespace h3body
