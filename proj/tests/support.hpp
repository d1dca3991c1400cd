#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "h3body/biquaternion.hpp"
#include "h3body/dynamics.hpp"
#include "h3body/geometry.hpp"

namespace h3body::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline cplx random_complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

inline Biquaternion random_biquaternion(double scale = 1.0) {
  return {random_complex(scale), random_complex(scale), random_complex(scale), random_complex(scale)};
}

/// Random element of SL2C (quadratic form 1).
inline Biquaternion random_unit(double scale = 1.0) {
  for (;;) {
    const Biquaternion q = random_biquaternion(scale);
    const cplx n = quadratic_form(q);
    if (std::abs(n) > 0.1) return q / std::sqrt(n);
  }
}

/// Random point of the complex sphere with a random cotangent vector.
inline std::pair<Biquaternion, Biquaternion> random_cotangent(double scale = 1.0) {
  const Biquaternion q = random_unit(scale);
  const Biquaternion v = random_biquaternion(scale);
  return {q, v - bilinear(q, v) * q};
}

inline HyperbolicPoint random_hyperbolic(double spread = 1.0) {
  return HyperbolicPoint::from_spatial(uniform(-spread, spread), uniform(-spread, spread),
                                       uniform(-spread, spread));
}

/// Hermitian momentum Minkowski-orthogonal to q: a real-form cotangent vector.
inline Biquaternion real_momentum(const Biquaternion& q, double scale) {
  const Biquaternion v{uniform(-scale, scale), cplx(0, uniform(-scale, scale)),
                       cplx(0, uniform(-scale, scale)), cplx(0, uniform(-scale, scale))};
  return v - bilinear(q, v) * q;
}

/// Real-form phase point with separation above min_z and small momenta.
inline PhasePoint random_real_phase_point(double momentum = 0.3, double min_z = 1.2) {
  for (;;) {
    const Biquaternion q1 = random_hyperbolic(0.8).biquaternion();
    const Biquaternion q2 = random_hyperbolic(0.8).biquaternion();
    if (bilinear(q1, q2).real() < min_z) continue;
    return {q1, real_momentum(q1, momentum), q2, real_momentum(q2, momentum)};
  }
}

/// Complexified phase point near the real form (small imaginary perturbation).
inline PhasePoint random_complex_phase_point(double eps = 0.05) {
  PhasePoint s = random_real_phase_point();
  auto bump = [&](Biquaternion& q, Biquaternion& p) {
    q = q + eps * random_biquaternion();
    q = q / std::sqrt(quadratic_form(q));
    p = p + eps * random_biquaternion();
    p = p - bilinear(q, p) * q;
  };
  bump(s.q1, s.p1);
  bump(s.q2, s.p2);
  return s;
}

inline double distance(const PhasePoint& a, const PhasePoint& b) {
  return std::max({coeff_norm(a.q1 - b.q1), coeff_norm(a.p1 - b.p1), coeff_norm(a.q2 - b.q2),
                   coeff_norm(a.p2 - b.p2)});
}

inline double distance(const ReducedState& a, const ReducedState& b) {
  return std::max({coeff_norm(a.L1 - b.L1), coeff_norm(a.L2 - b.L2), coeff_norm(a.qR - b.qR)});
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("h3body_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace h3body::testing
