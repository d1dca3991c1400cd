#pragma once

#include <cstddef>
#include <vector>

#include "h3body/equilibria.hpp"
#include "h3body/invariants.hpp"

namespace h3body {

/// (theta, psi) grid: theta_i = pi i / theta_steps over [0, pi), psi_j
/// evenly spaced over [psi_lo, psi_hi] inclusive. Cells are row-major in theta.
struct Grid {
  int theta_steps = 32;
  double psi_lo = 0.1;
  double psi_hi = 3.0;
  int psi_steps = 32;

  double theta(int i) const;
  double psi(int j) const;
  std::size_t size() const { return static_cast<std::size_t>(theta_steps) * psi_steps; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * psi_steps + j; }
};

/// Validates the bounds (psi_lo > 0, psi_lo < psi_hi, at least 2 points each way).
Grid make_grid(int theta_steps, double psi_lo, double psi_hi, int psi_steps);

struct RESweepRow {
  double theta = 0.0, psi = 0.0, m1 = 0.0, m2 = 0.0;
  double chi1 = 0.0, chi2 = 0.0, eta_abs = 0.0, zeta = 0.0, gamma = 0.0;
  Stability verdict = Stability::Degenerate;
  double residual = 0.0;
  double derivation_gap = 0.0;
};

RESweepRow re_cell(const Masses& m, const Potential& pot, double theta, double psi);

std::vector<RESweepRow> re_sweep_serial(const Masses& m, const Grid& g);
std::vector<RESweepRow> re_sweep_parallel(const Masses& m, const Grid& g);

ECSample ec_cell(const Masses& m, const Potential& pot, double theta, double psi);

std::vector<ECSample> ec_sweep_serial(const Masses& m, const Grid& g);
std::vector<ECSample> ec_sweep_parallel(const Masses& m, const Grid& g);

std::vector<double> gamma_grid_serial(const Masses& m, const Grid& g);
std::vector<double> gamma_grid_parallel(const Masses& m, const Grid& g);

/// Sign of det d(C_re, C_im)/d(theta, psi) at each grid node.
std::vector<double> casimir_det_grid_serial(const Masses& m, const Grid& g);
std::vector<double> casimir_det_grid_parallel(const Masses& m, const Grid& g);

/// Applies H3BODY_THREADS (if set and positive) as the OpenMP thread cap.
void apply_thread_cap_from_env();

}  // namespace h3body
