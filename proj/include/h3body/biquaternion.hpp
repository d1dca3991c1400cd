#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace h3body {

using cplx = std::complex<double>;

/// Complex quaternion u1 + vI + wJ + zK.
///
/// The basis satisfies I*J = K. The matrix view is
///
///     [ u + iv   w + iz ]
///     [ -w + iz  u - iv ]
///
/// so quadratic_form() is the determinant and the unit-form elements are SL2C.
class Biquaternion {
 public:
  constexpr Biquaternion() = default;
  constexpr Biquaternion(cplx u, cplx v, cplx w, cplx z) : c_{u, v, w, z} {}

  static constexpr Biquaternion scalar(cplx s) { return {s, 0.0, 0.0, 0.0}; }
  static constexpr Biquaternion one() { return scalar(1.0); }
  static constexpr Biquaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Biquaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Biquaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }
  /// Split-complex unit j = -iK, with j*j = 1.
  static constexpr Biquaternion split_unit() { return {0.0, 0.0, 0.0, cplx(0.0, -1.0)}; }

  constexpr cplx u() const { return c_[0]; }
  constexpr cplx v() const { return c_[1]; }
  constexpr cplx w() const { return c_[2]; }
  constexpr cplx z() const { return c_[3]; }

  constexpr const cplx& operator[](std::size_t k) const { return c_[k]; }
  constexpr cplx& operator[](std::size_t k) { return c_[k]; }
  constexpr const std::array<cplx, 4>& coeffs() const { return c_; }

  Biquaternion& operator+=(const Biquaternion& o);
  Biquaternion& operator-=(const Biquaternion& o);
  Biquaternion& operator*=(cplx s);

  friend bool operator==(const Biquaternion&, const Biquaternion&) = default;

 private:
  std::array<cplx, 4> c_{};
};

Biquaternion operator+(Biquaternion a, const Biquaternion& b);
Biquaternion operator-(Biquaternion a, const Biquaternion& b);
Biquaternion operator-(const Biquaternion& a);
Biquaternion operator*(cplx s, Biquaternion a);
Biquaternion operator*(Biquaternion a, cplx s);
Biquaternion operator/(Biquaternion a, cplx s);
/// Algebra product; same as mul().
Biquaternion operator*(const Biquaternion& a, const Biquaternion& b);

/// 2x2 complex matrix view of a biquaternion. Holds the coefficients, so
/// converting back to a Biquaternion is exact.
class MatrixView {
 public:
  explicit MatrixView(const Biquaternion& q) : q_(q) {}
  cplx operator()(int row, int col) const;
  Eigen::Matrix2cd matrix() const;
  const Biquaternion& biquaternion() const { return q_; }

 private:
  Biquaternion q_;
};

Eigen::Matrix2cd to_matrix(const Biquaternion& q);
Biquaternion from_matrix(const Eigen::Matrix2cd& m);

Biquaternion mul(const Biquaternion& a, const Biquaternion& b);
/// u^2 + v^2 + w^2 + z^2 (squares, not moduli).
cplx quadratic_form(const Biquaternion& q);
/// Symmetric complex-bilinear polarization of quadratic_form.
cplx bilinear(const Biquaternion& a, const Biquaternion& b);
/// Conjugate transpose of the matrix view: (u,v,w,z) -> (conj u, -conj v, -conj w, -conj z).
Biquaternion dagger(const Biquaternion& q);
/// Quaternionic conjugate (u, -v, -w, -z); no complex conjugation.
Biquaternion conjugate(const Biquaternion& q);

constexpr double kDefaultSingularEpsilon = 1e-14;

/// Throws SingularBiquaternion when |quadratic_form(q)| < eps.
Biquaternion inverse(const Biquaternion& q, double eps = kDefaultSingularEpsilon);

/// q - <q,1>1.
Biquaternion imag_part(const Biquaternion& q);
Biquaternion commutator(const Biquaternion& a, const Biquaternion& b);

/// sqrt(sum |c_k|^2); the Euclidean size on C^4 used for tolerances.
double coeff_norm(const Biquaternion& q);
/// Largest |c_k|.
double max_abs(const Biquaternion& q);
/// Squared Frobenius norm of the matrix view (= 2 * coeff_norm^2).
double frobenius_sq(const Biquaternion& q);

enum class GeneratorKind { semisimple, nilpotent, zero };

/// Traceless element of sl2C, tagged as semisimple or nilpotent.
class SL2Generator {
 public:
  /// Throws InvalidInput if the 1-component is not zero.
  explicit SL2Generator(const Biquaternion& xi);

  const Biquaternion& value() const { return xi_; }
  GeneratorKind kind() const { return kind_; }

 private:
  Biquaternion xi_;
  GeneratorKind kind_;
};

/// S = -i eta I, the diagonal generator diag(eta, -eta).
SL2Generator semisimple_generator(cplx eta);
/// N = [[0,1],[0,0]].
SL2Generator nilpotent_generator();

/// Closed-form exp(t xi) = cosh(lambda t) + sinh(lambda t)/lambda xi with
/// lambda^2 = -quadratic_form(xi).
Biquaternion exp_generator(const SL2Generator& xi, double t);

}  // namespace h3body
