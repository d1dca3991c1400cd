#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "h3body/errors.hpp"
#include "h3body/invariants.hpp"

namespace h3body {

namespace {

constexpr int kDim = 10;
using Vec = Eigen::Matrix<cplx, kDim, 1>;
using Mat = Eigen::Matrix<cplx, kDim, kDim>;

// Ambient coordinates: (v, w, z) of L1, (v, w, z) of L2, all four of qR.
Vec pack(const ReducedState& r) {
  Vec x;
  for (int k = 0; k < 3; ++k) {
    x(k) = r.L1[k + 1];
    x(3 + k) = r.L2[k + 1];
  }
  for (int k = 0; k < 4; ++k) x(6 + k) = r.qR[k];
  return x;
}

ReducedState unpack(const Vec& x) {
  return {{0.0, x(0), x(1), x(2)}, {0.0, x(3), x(4), x(5)}, {x(6), x(7), x(8), x(9)}};
}

Vec relative_field(const Vec& x, const Biquaternion& S, const Masses& m, const Potential& pot) {
  const ReducedState r = unpack(x);
  const ReducedTangent d = reduced_vector_field(r, m, pot);
  return pack({d.dL1 - commutator(S, r.L1), d.dL2 - commutator(S, r.L2), d.dqR - commutator(S, r.qR)});
}

template <typename Fn>
auto richardson_column(Fn&& fn, const Vec& x, int k) {
  const double h = 1e-6 * std::max(1.0, std::abs(x(k)));
  auto central = [&](double step) {
    Vec xp = x, xm = x;
    xp(k) += step;
    xm(k) -= step;
    return ((fn(xp) - fn(xm)) / (2.0 * step)).eval();
  };
  return ((4.0 * central(0.5 * h) - central(h)) / 3.0).eval();
}

std::vector<cplx> sorted_eigenvalues(const Eigen::MatrixXcd& a) {
  std::vector<cplx> ev;
  if (a.rows() == 0) return ev;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
  for (int i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
  return ev;
}

}  // namespace

double Linearization::max_abs_real_reduced() const {
  double r = 0.0;
  for (const auto& l : reduced) r = std::max(r, std::abs(l.real()));
  return r;
}

double Linearization::degeneracy_ratio() const {
  double lo = INFINITY, hi = 0.0;
  for (const auto& l : reduced) {
    lo = std::min(lo, std::norm(l));
    hi = std::max(hi, std::norm(l));
  }
  return hi > 0.0 ? lo / hi : 0.0;
}

Linearization linearize_at_re(const REClassification& c, const Masses& m, const Potential& pot) {
  const double res = re_residual(c, m, pot);
  if (res > 1e-9) {
    std::ostringstream os;
    os << "not a relative equilibrium: residual " << res;
    throw ResidualTooLarge(os.str());
  }
  const Biquaternion& S = c.generator;
  const Vec x0 = pack(reduced_state(c));

  Mat A;
  auto field = [&](const Vec& x) { return relative_field(x, S, m, pot); };
  for (int k = 0; k < kDim; ++k) A.col(k) = richardson_column(field, x0, k);

  // Conserved functions whose level sets cut out the reduced leaf.
  Eigen::Matrix<cplx, 3, kDim> G;
  auto casimirs = [](const Vec& x) {
    const ReducedState r = unpack(x);
    Eigen::Matrix<cplx, 3, 1> v;
    v(0) = quadratic_form(r.qR);
    v(1) = quadratic_form(r.L1 + r.L2);
    v(2) = quadratic_form(inverse(r.qR) * r.L1 * r.qR + r.L2);
    return v;
  };
  for (int k = 0; k < kDim; ++k) G.col(k) = richardson_column(casimirs, x0, k);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(G, Eigen::ComputeFullV);
  const Eigen::MatrixXcd V = svd.matrixV();
  const Eigen::MatrixXcd transverse = V.leftCols(3);
  const Eigen::MatrixXcd leaf = V.rightCols(kDim - 3);

  // Infinitesimal residual action of I, J, K at x0.
  const ReducedState r0 = unpack(x0);
  Eigen::Matrix<cplx, kDim, 3> W;
  const std::array<Biquaternion, 3> basis{Biquaternion::unit_i(), Biquaternion::unit_j(), Biquaternion::unit_k()};
  for (int i = 0; i < 3; ++i) {
    const Biquaternion& e = basis[i];
    W.col(i) = pack({commutator(e, r0.L1), commutator(e, r0.L2), commutator(e, r0.qR)});
  }

  const Eigen::MatrixXcd A_leaf = leaf.adjoint() * A * leaf;
  const Eigen::MatrixXcd W_leaf = leaf.adjoint() * W;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(W_leaf);
  const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(W_leaf.rows(), W_leaf.rows());
  const Eigen::MatrixXcd group = Q.leftCols(3);
  const Eigen::MatrixXcd rest = Q.rightCols(W_leaf.rows() - 3);

  Linearization out;
  out.reduced = sorted_eigenvalues(rest.adjoint() * A_leaf * rest);
  out.group_modes = sorted_eigenvalues(group.adjoint() * A_leaf * group);
  out.casimir_modes = sorted_eigenvalues(transverse.adjoint() * A * transverse);
  out.full = sorted_eigenvalues(A);
  return out;
}

}  // namespace h3body
