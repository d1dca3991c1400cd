#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "h3body/dynamics.hpp"
#include "h3body/errors.hpp"

namespace h3body {

namespace {

template <std::size_t N>
using Vec = std::array<cplx, N>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, const Vec<N>& k) {
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
  return r;
}

void put(const Biquaternion& q, cplx* dst) {
  for (std::size_t k = 0; k < 4; ++k) dst[k] = q[k];
}

Biquaternion get(const cplx* src) { return {src[0], src[1], src[2], src[3]}; }

struct FullSystem {
  static constexpr std::size_t N = 16;
  using State = PhasePoint;

  const Masses& m;
  const Potential& pot;
  cplx energy0;
  MomentumMap momentum0;

  static Vec<N> pack(const PhasePoint& s) {
    Vec<N> v;
    put(s.q1, &v[0]);
    put(s.p1, &v[4]);
    put(s.q2, &v[8]);
    put(s.p2, &v[12]);
    return v;
  }
  static PhasePoint unpack(const Vec<N>& v) {
    return {get(&v[0]), get(&v[4]), get(&v[8]), get(&v[12])};
  }
  Vec<N> field(const Vec<N>& v) const {
    const PhaseTangent d = phase_vector_field(unpack(v), m, pot);
    return pack({d.dq1, d.dp1, d.dq2, d.dp2});
  }
  // Returns the pre-projection drift.
  static double project(Vec<N>& v) {
    PhasePoint s = unpack(v);
    const auto rep = check_invariants(s);
    auto fix = [](Biquaternion& q, Biquaternion& p) {
      q = q / std::sqrt(quadratic_form(q));
      p = p - bilinear(q, p) * q;
    };
    fix(s.q1, s.p1);
    fix(s.q2, s.p2);
    v = pack(s);
    return std::max(rep.sphere_drift, rep.cotangent_drift);
  }
  double energy_drift(const PhasePoint& s) const {
    return std::abs(hamiltonian(s, m, pot) - energy0);
  }
  double momentum_drift(const PhasePoint& s) const {
    const MomentumMap j = momentum_map_J(s);
    return std::max(max_abs(j.left - momentum0.left), max_abs(j.right - momentum0.right));
  }
};

struct ReducedSystem {
  static constexpr std::size_t N = 12;
  using State = ReducedState;

  const Masses& m;
  const Potential& pot;
  cplx energy0;
  Biquaternion momentum0;

  static Vec<N> pack(const ReducedState& r) {
    Vec<N> v;
    put(r.L1, &v[0]);
    put(r.L2, &v[4]);
    put(r.qR, &v[8]);
    return v;
  }
  static ReducedState unpack(const Vec<N>& v) { return {get(&v[0]), get(&v[4]), get(&v[8])}; }
  Vec<N> field(const Vec<N>& v) const {
    const ReducedTangent d = reduced_vector_field(unpack(v), m, pot);
    return pack({d.dL1, d.dL2, d.dqR});
  }
  static double project(Vec<N>& v) {
    ReducedState r = unpack(v);
    const double drift = std::max({std::abs(quadratic_form(r.qR) - 1.0), std::abs(r.L1.u()),
                                   std::abs(r.L2.u())});
    r.qR = r.qR / std::sqrt(quadratic_form(r.qR));
    r.L1 = imag_part(r.L1);
    r.L2 = imag_part(r.L2);
    v = pack(r);
    return drift;
  }
  double energy_drift(const ReducedState& r) const {
    return std::abs(reduced_hamiltonian(r, m, pot) - energy0);
  }
  double momentum_drift(const ReducedState& r) const {
    return max_abs(r.L1 + r.L2 - momentum0);
  }
};

template <std::size_t N, typename Field>
Vec<N> rk4_step(const Field& f, const Vec<N>& y, double h) {
  const Vec<N> k1 = f(y);
  const Vec<N> k2 = f(axpy(y, 0.5 * h, k1));
  const Vec<N> k3 = f(axpy(y, 0.5 * h, k2));
  const Vec<N> k4 = f(axpy(y, h, k3));
  Vec<N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return r;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

template <std::size_t N>
struct DopriResult {
  Vec<N> y;
  double err;
};

template <std::size_t N, typename Field>
DopriResult<N> dopri_step(const Field& f, const Vec<N>& y, double h, double rtol, double atol) {
  const Vec<N> k1 = f(y);
  Vec<N> t;
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * a21 * k1[i];
  const Vec<N> k2 = f(t);
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
  const Vec<N> k3 = f(t);
  for (std::size_t i = 0; i < N; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
  const Vec<N> k4 = f(t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
  const Vec<N> k5 = f(t);
  for (std::size_t i = 0; i < N; ++i)
    t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
  const Vec<N> k6 = f(t);
  Vec<N> y5;
  for (std::size_t i = 0; i < N; ++i)
    y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
  const Vec<N> k7 = f(y5);
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const cplx e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    acc += std::norm(e) / (sc * sc);
  }
  return {y5, std::sqrt(acc / N)};
}

template <typename System>
Trajectory<typename System::State> run(const System& sys, const typename System::State& initial,
                                       const IntegratorOptions& opt) {
  constexpr std::size_t N = System::N;
  if (!(opt.dt > 0.0) || !(opt.t_end >= 0.0))
    throw InvalidInput("integrator needs dt > 0 and t_end >= 0");

  Trajectory<typename System::State> traj;
  auto field = [&sys](const Vec<N>& v) { return sys.field(v); };

  Vec<N> y = System::pack(initial);
  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(initial);

  auto record = [&](double drift) {
    if (drift > opt.blowup) {
      std::ostringstream os;
      os << "constraint drift " << drift << " exceeded " << opt.blowup << " at t = " << t;
      throw ConstraintBlowup(os.str());
    }
    traj.max_constraint_drift = std::max(traj.max_constraint_drift, drift);
    const auto s = System::unpack(y);
    traj.max_energy_drift = std::max(traj.max_energy_drift, sys.energy_drift(s));
    traj.max_momentum_drift = std::max(traj.max_momentum_drift, sys.momentum_drift(s));
    traj.times.push_back(t);
    traj.states.push_back(s);
  };

  if (opt.method == Method::rk4) {
    const auto steps = static_cast<long>(std::ceil(opt.t_end / opt.dt - 1e-9));
    const double h = steps > 0 ? opt.t_end / static_cast<double>(steps) : 0.0;
    for (long n = 1; n <= steps; ++n) {
      y = rk4_step<N>(field, y, h);
      t = static_cast<double>(n) * h;
      record(System::project(y));
    }
    return traj;
  }

  double h = opt.dt;
  int rejects = 0;
  while (t < opt.t_end) {
    const bool last = t + h >= opt.t_end;
    const double step = last ? opt.t_end - t : h;
    const auto r = dopri_step<N>(field, y, step, opt.rtol, opt.atol);
    const double factor = std::clamp(0.9 * std::pow(std::max(r.err, 1e-16), -0.2), 0.2, 5.0);
    if (r.err <= 1.0 && std::isfinite(r.err)) {
      y = r.y;
      t = last ? opt.t_end : t + step;
      rejects = 0;
      record(System::project(y));
      h = step * factor;
    } else {
      ++traj.rejected_steps;
      if (++rejects > opt.max_rejections || step < 1e-14) {
        std::ostringstream os;
        os << "dopri step rejected " << rejects << " times at t = " << t << " (h = " << step << ")";
        throw StepRejected(os.str());
      }
      h = step * (std::isfinite(r.err) ? factor : 0.2);
    }
  }
  return traj;
}

}  // namespace

Trajectory<PhasePoint> integrate(const PhasePoint& initial, const Masses& m, const Potential& pot,
                                 const IntegratorOptions& opt) {
  const FullSystem sys{m, pot, hamiltonian(initial, m, pot), momentum_map_J(initial)};
  return run(sys, initial, opt);
}

Trajectory<ReducedState> integrate(const ReducedState& initial, const Masses& m,
                                   const Potential& pot, const IntegratorOptions& opt) {
  const ReducedSystem sys{m, pot, reduced_hamiltonian(initial, m, pot), initial.L1 + initial.L2};
  return run(sys, initial, opt);
}

}  // namespace h3body
