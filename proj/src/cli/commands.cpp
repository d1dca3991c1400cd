#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli/config.hpp"
#include "h3body/equilibria.hpp"
#include "h3body/errors.hpp"
#include "h3body/geometry.hpp"
#include "h3body/io.hpp"
#include "h3body/svg.hpp"

namespace h3body::cli {

namespace fs = std::filesystem;

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += (c == 'j' ? 'i' : c);
  auto number = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw InvalidInput("cannot parse complex number '" + text + "'");
    return v;
  };
  if (s.empty()) throw InvalidInput("empty complex number");
  if (s.back() != 'i') return {number(s), 0.0};
  s.pop_back();
  // Split before the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(s.substr(0, split)), number(s.substr(split))};
}

ScalarGrid scalar_grid(const Grid& g, const std::vector<double>& values) {
  ScalarGrid s;
  s.nx = g.theta_steps;
  s.ny = g.psi_steps;
  for (int i = 0; i < g.theta_steps; ++i) s.x.push_back(g.theta(i));
  for (int j = 0; j < g.psi_steps; ++j) s.y.push_back(g.psi(j));
  s.values = values;
  return s;
}

std::set<Cell> ec_singular_cells(const Grid& g, const std::vector<double>& casimir_det) {
  return sign_change_cells(scalar_grid(g, casimir_det));
}

namespace {

using nlohmann::json;

// Flags that were actually given on the command line override the config file.
struct Overrides {
  double m1 = 1.0, m2 = 2.0;
  std::string potential, coefficients, method, format, out, config;
  double dt = 0, t_end = 0, rtol = 0, atol = 0;
  int theta_steps = 0, psi_steps = 0;
  double psi_lo = 0, psi_hi = 0;
  CLI::App* app = nullptr;

  bool given(const std::string& name) const {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  }
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON run configuration; flags override it");
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--format", o.format, "comma list of csv,json,svg");
}

void add_masses(CLI::App* sub, Overrides& o) {
  sub->add_option("--m1", o.m1, "mass of particle 1");
  sub->add_option("--m2", o.m2, "mass of particle 2");
}

void add_grid(CLI::App* sub, Overrides& o) {
  sub->add_option("--theta-steps", o.theta_steps, "theta samples over [0, pi)");
  sub->add_option("--psi-lo", o.psi_lo, "smallest separation (> 0)");
  sub->add_option("--psi-hi", o.psi_hi, "largest separation");
  sub->add_option("--psi-steps", o.psi_steps, "psi samples, endpoints included");
}

RunConfig merge(Overrides& o, CLI::App* sub) {
  o.app = sub;
  RunConfig cfg;
  if (o.given("--config")) cfg = load_config(o.config);
  if (o.given("--m1") || o.given("--m2")) {
    cfg.masses = Masses(o.given("--m1") ? o.m1 : cfg.masses.m1, o.given("--m2") ? o.m2 : cfg.masses.m2);
  }
  if (o.given("--potential")) cfg.potential.kind = o.potential;
  if (o.given("--coefficients")) {
    cfg.potential.coefficients.clear();
    std::stringstream ss(o.coefficients);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        cfg.potential.coefficients.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InvalidInput("bad coefficient '" + item + "'");
      }
    }
  }
  if (o.given("--method")) cfg.integrator.method = parse_method(o.method);
  if (o.given("--dt")) cfg.integrator.dt = o.dt;
  if (o.given("--t-end")) cfg.integrator.t_end = o.t_end;
  if (o.given("--rtol")) cfg.integrator.rtol = o.rtol;
  if (o.given("--atol")) cfg.integrator.atol = o.atol;
  if (o.given("--theta-steps")) cfg.grid.theta_steps = o.theta_steps;
  if (o.given("--psi-lo")) cfg.grid.psi_lo = o.psi_lo;
  if (o.given("--psi-hi")) cfg.grid.psi_hi = o.psi_hi;
  if (o.given("--psi-steps")) cfg.grid.psi_steps = o.psi_steps;
  if (o.given("--out")) cfg.out = o.out;
  if (o.given("--format")) cfg.formats = parse_formats(o.format);
  validate(cfg);
  return cfg;
}

// ---- orbit ---------------------------------------------------------------

struct OrbitArgs {
  std::string kind;
  std::string eta;
  std::vector<double> base{0.3, 0.5, 0.0};
  double t0 = -3.0, t1 = 3.0;
  int samples = 601;
};

cplx default_eta(OrbitKind k) {
  switch (k) {
    case OrbitKind::elliptic: return {0.0, 1.0};
    case OrbitKind::hyperbolic: return {1.0, 0.0};
    case OrbitKind::loxodromic: return {0.3, 1.0};
    case OrbitKind::parabolic: break;
  }
  return {0.0, 0.0};
}

int cmd_orbit(const OrbitArgs& a, const RunConfig& cfg, std::ostream& out) {
  const OrbitKind kind = parse_orbit_kind(a.kind);
  const cplx eta = a.eta.empty() ? default_eta(kind) : parse_complex(a.eta);
  if (a.base.size() != 3) throw InvalidInput("--base takes three ball coordinates X Y Z");
  const BallPoint b{a.base[0], a.base[1], a.base[2]};
  if (!(b.norm() < 1.0)) throw InvalidInput("--base must lie inside the unit ball");
  if (a.t1 < a.t0) throw InvalidInput("--t1 must be >= --t0");
  if (a.samples < 1) throw InvalidInput("--samples must be >= 1");

  const HyperbolicPoint base = from_poincare_ball(b);
  const int n = (a.t1 == a.t0) ? 1 : std::max(2, a.samples);
  std::vector<double> times(n);
  for (int k = 0; k < n; ++k) times[k] = (n == 1) ? a.t0 : a.t0 + (a.t1 - a.t0) * k / (n - 1);

  double drift = 0.0;
  for (const auto& q : orbit_points(kind, eta, base, times)) drift = std::max(drift, hyperboloid_drift(q));
  const std::vector<BallPoint> pts = one_param_orbit(kind, eta, base, times);

  const std::string stem = "orbit_" + std::string(to_string(kind));
  if (cfg.wants(Format::csv)) write_atomic(cfg.out / (stem + ".csv"), orbit_csv(times, pts));
  if (cfg.wants(Format::svg))
    write_atomic(cfg.out / (stem + ".svg"), orbit_svg(pts, std::string(to_string(kind)) + " orbit"));
  out << "kind: " << to_string(kind) << "\n"
      << "points: " << pts.size() << "\n"
      << "max_manifold_drift: " << format_number(drift) << "\n";
  return 0;
}

// ---- simulate ------------------------------------------------------------

int cmd_simulate(const std::string& state_path, bool masses_given, RunConfig cfg, std::ostream& out) {
  const StateFile sf = state_from_json(read_text(state_path));
  if (sf.masses && !masses_given) cfg.masses = *sf.masses;
  h3body::validate(sf.state);
  const Potential pot = cfg.make_potential();
  const Trajectory<PhasePoint> traj = integrate(sf.state, cfg.masses, pot, cfg.integrator);

  double real_dev = 0.0;
  for (const auto& s : traj.states) real_dev = std::max(real_dev, real_form_deviation(s));

  json summary;
  summary["method"] = to_string(cfg.integrator.method);
  summary["dt"] = cfg.integrator.dt;
  summary["t_end"] = cfg.integrator.t_end;
  summary["steps"] = traj.states.size() - 1;
  summary["rejected_steps"] = traj.rejected_steps;
  summary["max_energy_drift"] = traj.max_energy_drift;
  summary["max_constraint_drift"] = traj.max_constraint_drift;
  summary["max_momentum_drift"] = traj.max_momentum_drift;
  summary["real_form_max_deviation"] = real_dev;
  if (sf.generator) {
    // A relative equilibrium moves along q -> g q g^dagger with g = exp(t S).
    const SL2Generator S(*sf.generator);
    const PhasePoint& s0 = traj.states.front();
    double dev = 0.0;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      const Biquaternion g = exp_generator(S, traj.times[k]);
      const PhasePoint& s = traj.states[k];
      dev = std::max({dev, coeff_norm(s.q1 - conjugate_action(g, s0.q1)),
                      coeff_norm(s.p1 - conjugate_action(g, s0.p1)),
                      coeff_norm(s.q2 - conjugate_action(g, s0.q2)),
                      coeff_norm(s.p2 - conjugate_action(g, s0.p2))});
    }
    summary["orbit_tracking_max_deviation"] = dev;
  }

  if (cfg.wants(Format::csv))
    write_atomic(cfg.out / "trajectory.csv", trajectory_csv(traj, cfg.masses, pot));
  if (cfg.wants(Format::json)) write_atomic(cfg.out / "summary.json", summary.dump(2) + "\n");
  out << summary.dump(2) << "\n";
  return 0;
}

// ---- re ------------------------------------------------------------------

std::string generator_class(double theta) {
  // Flags carry a handful of digits, so the test is loose.
  if (std::abs(std::cos(theta)) < 1e-4) return "elliptic";
  if (std::abs(std::sin(theta)) < 1e-4) return "hyperbolic";
  return "loxodromic";
}

int cmd_re(double theta, double psi, const RunConfig& cfg, std::ostream& out) {
  if (!(psi > 0.0)) throw DegenerateSeparation("psi must be > 0 (got " + format_number(psi) + ")");
  const Potential pot = potential_gravitational(cfg.masses);
  const REParams p{theta, psi, cfg.masses};
  const REClassification c = construct_re(p, pot);
  const StabilityVerdict v = classify_stability(p);
  const double residual = re_residual(c, cfg.masses, pot);

  out << "theta: " << format_number(theta) << "\n"
      << "psi: " << format_number(psi) << "\n"
      << "m1: " << format_number(cfg.masses.m1) << "\n"
      << "m2: " << format_number(cfg.masses.m2) << "\n"
      << "chi1: " << format_number(c.chi1) << "\n"
      << "chi2: " << format_number(c.chi2) << "\n"
      << "eta_abs: " << format_number(std::abs(c.eta)) << "\n"
      << "generator: " << generator_class(theta) << "\n"
      << "zeta: " << format_number(c.zeta) << "\n"
      << "gamma: " << format_number(v.gamma) << "\n"
      << "verdict: " << to_string(v.kind) << "\n"
      << "residual: " << format_number(residual) << "\n";

  if (cfg.wants(Format::json)) {
    StateFile sf{lift_to_phase(c, cfg.masses), cfg.masses, c.generator};
    write_atomic(cfg.out / "re_state.json", state_to_json(sf));
  }
  return 0;
}

// ---- sweep / ec-diagram --------------------------------------------------

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const Grid g = make_grid(cfg.grid.theta_steps, cfg.grid.psi_lo, cfg.grid.psi_hi, cfg.grid.psi_steps);
  const std::vector<RESweepRow> rows = re_sweep_parallel(cfg.masses, g);
  std::vector<double> gam(rows.size());
  std::transform(rows.begin(), rows.end(), gam.begin(), [](const RESweepRow& r) { return r.gamma; });
  const Contour c = marching_squares(scalar_grid(g, gam));

  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, r.residual);
  if (cfg.wants(Format::csv)) write_atomic(cfg.out / "re_sweep.csv", re_sweep_csv(rows));
  if (cfg.wants(Format::svg))
    write_atomic(cfg.out / "gamma_curve.svg",
                 gamma_curve_svg(c, g, "Gamma(theta, psi) = 0, m1 = " + format_number(cfg.masses.m1) +
                                           ", m2 = " + format_number(cfg.masses.m2)));
  out << "cells: " << g.size() << "\n"
      << "contour_segments: " << c.segments.size() << "\n"
      << "contour_cells: " << c.cells.size() << "\n"
      << "contour_components: " << c.components << "\n"
      << "max_residual: " << format_number(worst) << "\n";
  return 0;
}

int cmd_ec_diagram(const RunConfig& cfg, std::ostream& out) {
  const Grid g = make_grid(cfg.grid.theta_steps, cfg.grid.psi_lo, cfg.grid.psi_hi, cfg.grid.psi_steps);
  const std::vector<ECSample> samples = ec_sweep_parallel(cfg.masses, g);
  const std::set<Cell> singular = ec_singular_cells(g, casimir_det_grid_parallel(cfg.masses, g));

  if (cfg.wants(Format::csv)) {
    write_atomic(cfg.out / "ec_diagram.csv", ec_csv(samples));
    std::string cells = "i,j,theta,psi\n";
    for (const auto& [i, j] : singular)
      cells += std::to_string(i) + "," + std::to_string(j) + "," + format_number(g.theta(i)) + "," +
               format_number(g.psi(j)) + "\n";
    write_atomic(cfg.out / "ec_singular_cells.csv", cells);
  }
  if (cfg.wants(Format::svg))
    write_atomic(cfg.out / "ec_diagram.svg",
                 ec_svg(samples, g, singular,
                        "Energy-Casimir diagram, m1 = " + format_number(cfg.masses.m1) +
                            ", m2 = " + format_number(cfg.masses.m2)));
  out << "samples: " << samples.size() << "\n"
      << "singular_cells: " << singular.size() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two bodies on hyperbolic 3-space: orbits, simulation, relative equilibria"};
  app.require_subcommand(1);

  Overrides o;
  OrbitArgs orbit;
  auto* c_orbit = app.add_subcommand("orbit", "orbit of a one-parameter subgroup in the Poincare ball");
  c_orbit->add_option("--kind", orbit.kind, "elliptic | hyperbolic | loxodromic | parabolic")->required();
  c_orbit->add_option("--eta", orbit.eta,
                      "generator eta: imaginary (elliptic), real (hyperbolic), both parts (loxodromic)");
  c_orbit->add_option("--base", orbit.base, "base point in ball coordinates X Y Z")->expected(3);
  c_orbit->add_option("--t0", orbit.t0, "start time");
  c_orbit->add_option("--t1", orbit.t1, "end time");
  c_orbit->add_option("--samples", orbit.samples, "number of points");
  add_common(c_orbit, o);

  std::string state_path;
  auto* c_sim = app.add_subcommand("simulate", "integrate a state file on the complexified phase space");
  c_sim->add_option("--state", state_path, "state JSON (as written by 're')")->required();
  c_sim->add_option("--method", o.method, "rk4 | dopri");
  c_sim->add_option("--dt", o.dt, "step (rk4) or initial step (dopri)");
  c_sim->add_option("--t-end", o.t_end, "final time");
  c_sim->add_option("--rtol", o.rtol, "dopri relative tolerance");
  c_sim->add_option("--atol", o.atol, "dopri absolute tolerance");
  c_sim->add_option("--potential", o.potential, "gravitational | polynomial");
  c_sim->add_option("--coefficients", o.coefficients, "polynomial coefficients c0,c1,...");
  add_masses(c_sim, o);
  add_common(c_sim, o);

  double theta = 0.0, psi = 1.0;
  auto* c_re = app.add_subcommand("re", "construct and classify one relative equilibrium");
  c_re->add_option("--theta", theta, "arg eta")->required();
  c_re->add_option("--psi", psi, "separation, > 0")->required();
  add_masses(c_re, o);
  add_common(c_re, o);

  auto* c_sweep = app.add_subcommand("sweep", "relative equilibria over a (theta, psi) grid");
  add_masses(c_sweep, o);
  add_grid(c_sweep, o);
  add_common(c_sweep, o);

  auto* c_ec = app.add_subcommand("ec-diagram", "energy-Casimir image of the relative equilibria");
  add_masses(c_ec, o);
  add_grid(c_ec, o);
  add_common(c_ec, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  apply_thread_cap_from_env();
  try {
    if (c_orbit->parsed()) return cmd_orbit(orbit, merge(o, c_orbit), out);
    if (c_sim->parsed()) {
      RunConfig cfg = merge(o, c_sim);
      return cmd_simulate(state_path, o.given("--m1") || o.given("--m2"), cfg, out);
    }
    if (c_re->parsed()) return cmd_re(theta, psi, merge(o, c_re), out);
    if (c_sweep->parsed()) return cmd_sweep(merge(o, c_sweep), out);
    if (c_ec->parsed()) return cmd_ec_diagram(merge(o, c_ec), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::input ? 2 : 3;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace h3body::cli
