#include "h3body/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <omp.h>

#include "h3body/errors.hpp"

namespace h3body {

double Grid::theta(int i) const { return std::numbers::pi * i / theta_steps; }

double Grid::psi(int j) const { return psi_lo + (psi_hi - psi_lo) * j / (psi_steps - 1); }

Grid make_grid(int theta_steps, double psi_lo, double psi_hi, int psi_steps) {
  std::ostringstream os;
  if (theta_steps < 2 || psi_steps < 2)
    os << "grid needs at least 2 steps in each direction";
  else if (!(psi_lo > 0.0))
    os << "psi lower bound must be > 0 (got " << psi_lo << ")";
  else if (!(psi_hi > psi_lo))
    os << "psi bounds must be ordered (got " << psi_lo << " >= " << psi_hi << ")";
  if (!os.str().empty()) throw InvalidInput(os.str());
  return {theta_steps, psi_lo, psi_hi, psi_steps};
}

RESweepRow re_cell(const Masses& m, const Potential& pot, double theta, double psi) {
  const REParams p{theta, psi, m};
  const REClassification c = construct_re(p, pot);
  const StabilityVerdict v = classify_stability(p);
  RESweepRow row;
  row.theta = theta;
  row.psi = psi;
  row.m1 = m.m1;
  row.m2 = m.m2;
  row.chi1 = c.chi1;
  row.chi2 = c.chi2;
  row.eta_abs = std::abs(c.eta);
  row.zeta = c.zeta;
  row.gamma = v.gamma;
  row.verdict = v.kind;
  row.residual = re_residual(c, m, pot);
  row.derivation_gap = c.derivation_gap;
  return row;
}

ECSample ec_cell(const Masses& m, const Potential& pot, double theta, double psi) {
  const REClassification c = construct_re({theta, psi, m}, pot);
  return {theta, psi, energy_casimir(reduced_state(c), m, pot), gamma({theta, psi, m})};
}

namespace {

template <typename T, typename Fn>
std::vector<T> sweep_serial(const Grid& g, Fn&& cell) {
  std::vector<T> out(g.size());
  for (int i = 0; i < g.theta_steps; ++i)
    for (int j = 0; j < g.psi_steps; ++j) out[g.index(i, j)] = cell(g.theta(i), g.psi(j));
  return out;
}

// Each cell writes its own slot, so the result is independent of the schedule.
template <typename T, typename Fn>
std::vector<T> sweep_parallel(const Grid& g, Fn&& cell) {
  std::vector<T> out(g.size());
  const long n = static_cast<long>(g.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < n; ++k) {
    const int i = static_cast<int>(k / g.psi_steps);
    const int j = static_cast<int>(k % g.psi_steps);
    out[k] = cell(g.theta(i), g.psi(j));
  }
  return out;
}

double casimir_det(const Masses& m, double theta, double psi) {
  const auto J = casimir_jacobian(theta, psi, m);
  return J[0][0] * J[1][1] - J[0][1] * J[1][0];
}

}  // namespace

std::vector<RESweepRow> re_sweep_serial(const Masses& m, const Grid& g) {
  const Potential pot = potential_gravitational(m);
  return sweep_serial<RESweepRow>(g, [&](double t, double p) { return re_cell(m, pot, t, p); });
}

std::vector<RESweepRow> re_sweep_parallel(const Masses& m, const Grid& g) {
  const Potential pot = potential_gravitational(m);
  return sweep_parallel<RESweepRow>(g, [&](double t, double p) { return re_cell(m, pot, t, p); });
}

std::vector<ECSample> ec_sweep_serial(const Masses& m, const Grid& g) {
  const Potential pot = potential_gravitational(m);
  return sweep_serial<ECSample>(g, [&](double t, double p) { return ec_cell(m, pot, t, p); });
}

std::vector<ECSample> ec_sweep_parallel(const Masses& m, const Grid& g) {
  const Potential pot = potential_gravitational(m);
  return sweep_parallel<ECSample>(g, [&](double t, double p) { return ec_cell(m, pot, t, p); });
}

std::vector<double> gamma_grid_serial(const Masses& m, const Grid& g) {
  return sweep_serial<double>(g, [&](double t, double p) { return gamma({t, p, m}); });
}

std::vector<double> gamma_grid_parallel(const Masses& m, const Grid& g) {
  return sweep_parallel<double>(g, [&](double t, double p) { return gamma({t, p, m}); });
}

std::vector<double> casimir_det_grid_serial(const Masses& m, const Grid& g) {
  return sweep_serial<double>(g, [&](double t, double p) { return casimir_det(m, t, p); });
}

std::vector<double> casimir_det_grid_parallel(const Masses& m, const Grid& g) {
  return sweep_parallel<double>(g, [&](double t, double p) { return casimir_det(m, t, p); });
}

void apply_thread_cap_from_env() {
  if (const char* env = std::getenv("H3BODY_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace h3body
