#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Dense>

#include "h3body/biquaternion.hpp"
#include "h3body/errors.hpp"
#include "support.hpp"

using namespace h3body;
using h3body::testing::random_biquaternion;

namespace {

// Independent oracle: scaling and squaring with a truncated Taylor series.
Eigen::Matrix2cd expm_oracle(const Eigen::Matrix2cd& a) {
  int s = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2;
    ++s;
  }
  const Eigen::Matrix2cd b = a / std::pow(2.0, s);
  Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity(), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

double matrix_gap(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Biquaternion, BasisRelations) {
  const auto I = Biquaternion::unit_i(), J = Biquaternion::unit_j(), K = Biquaternion::unit_k();
  EXPECT_EQ(I * J, K);
  EXPECT_EQ(J * K, I);
  EXPECT_EQ(K * I, J);
  EXPECT_EQ(I * I, -Biquaternion::one());
  EXPECT_EQ(J * I, -K);
  const auto j = Biquaternion::split_unit();
  EXPECT_LT(coeff_norm(j * j - Biquaternion::one()), 1e-15);
}

TEST(Biquaternion, QuadraticFormIsSumOfSquares) {
  const Biquaternion q{1.0, cplx(0, 1), 2.0, cplx(1, 1)};
  // 1 - 1 + 4 + 2i
  EXPECT_EQ(quadratic_form(q), cplx(4.0, 2.0));
}

TEST(Biquaternion, CompositionProperty) {
  double worst = 0.0;
  for (int k = 0; k < 2000; ++k) {
    const auto a = random_biquaternion(), b = random_biquaternion();
    worst = std::max(worst, std::abs(quadratic_form(a * b) - quadratic_form(a) * quadratic_form(b)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Biquaternion, BilinearIsPolarizationOfQuadraticForm) {
  for (int k = 0; k < 500; ++k) {
    const auto a = random_biquaternion(), b = random_biquaternion();
    const cplx polar = 0.5 * (quadratic_form(a + b) - quadratic_form(a) - quadratic_form(b));
    EXPECT_LT(std::abs(bilinear(a, b) - polar), 1e-13);
    EXPECT_LT(std::abs(bilinear(a, b) - bilinear(b, a)), 1e-15);
    EXPECT_LT(std::abs(bilinear(a, a) - quadratic_form(a)), 1e-13);
  }
}

TEST(Biquaternion, MatrixViewIsAnAlgebraMap) {
  for (int k = 0; k < 500; ++k) {
    const auto a = random_biquaternion(), b = random_biquaternion();
    EXPECT_LT(matrix_gap(to_matrix(a * b), to_matrix(a) * to_matrix(b)), 1e-14);
    EXPECT_LT(std::abs(to_matrix(a).determinant() - quadratic_form(a)), 1e-13);
    EXPECT_LT(matrix_gap(to_matrix(dagger(a)), to_matrix(a).adjoint()), 1e-15);
    EXPECT_LT(coeff_norm(from_matrix(to_matrix(a)) - a), 1e-15);
    EXPECT_EQ(MatrixView(a).biquaternion(), a);
    EXPECT_EQ(MatrixView(a)(0, 1), to_matrix(a)(0, 1));
  }
}

TEST(Biquaternion, ConjugateGivesNorm) {
  for (int k = 0; k < 200; ++k) {
    const auto a = random_biquaternion();
    EXPECT_LT(coeff_norm(a * conjugate(a) - Biquaternion::scalar(quadratic_form(a))), 1e-13);
  }
}

TEST(Biquaternion, InverseAndSingular) {
  for (int k = 0; k < 200; ++k) {
    const auto a = random_biquaternion();
    EXPECT_LT(coeff_norm(a * inverse(a) - Biquaternion::one()), 1e-9 / std::abs(quadratic_form(a)));
  }
  // A null vector of the form: 1 + iI has u^2 + v^2 = 0.
  EXPECT_THROW(inverse(Biquaternion{1.0, cplx(0, 1), 0.0, 0.0}), SingularBiquaternion);
  EXPECT_THROW(inverse(Biquaternion{}), SingularBiquaternion);
}

TEST(Biquaternion, ImagPartAndCommutator) {
  const auto a = random_biquaternion();
  EXPECT_EQ(imag_part(a).u(), cplx(0.0));
  EXPECT_EQ(imag_part(a).v(), a.v());
  const auto I = Biquaternion::unit_i(), J = Biquaternion::unit_j();
  EXPECT_LT(coeff_norm(commutator(I, J) - 2.0 * Biquaternion::unit_k()), 1e-15);
}

TEST(SL2Generator, RejectsNonTraceless) {
  EXPECT_THROW(SL2Generator(Biquaternion::one()), InvalidInput);
  EXPECT_EQ(SL2Generator(Biquaternion{}).kind(), GeneratorKind::zero);
  EXPECT_EQ(nilpotent_generator().kind(), GeneratorKind::nilpotent);
  EXPECT_EQ(semisimple_generator(cplx(0.3, 1.0)).kind(), GeneratorKind::semisimple);
}

TEST(SL2Generator, SemisimpleIsDiagonal) {
  const cplx eta(0.4, -1.3);
  const auto m = to_matrix(semisimple_generator(eta).value());
  EXPECT_LT(std::abs(m(0, 0) - eta), 1e-15);
  EXPECT_LT(std::abs(m(1, 1) + eta), 1e-15);
  EXPECT_LT(std::abs(m(0, 1)) + std::abs(m(1, 0)), 1e-15);
  const auto n = to_matrix(nilpotent_generator().value());
  EXPECT_LT(std::abs(n(0, 1) - 1.0) + std::abs(n(0, 0)) + std::abs(n(1, 0)) + std::abs(n(1, 1)), 1e-15);
}

TEST(SL2Generator, ExponentialMatchesScalingAndSquaring) {
  std::vector<SL2Generator> gens{semisimple_generator(cplx(0, 1)), semisimple_generator(1.0),
                                 semisimple_generator(cplx(0.3, 1.1)), nilpotent_generator()};
  for (int k = 0; k < 50; ++k) gens.emplace_back(imag_part(random_biquaternion()));
  // Nearly nilpotent: exercises the series branch of the closed form.
  gens.emplace_back(nilpotent_generator().value() + 1e-6 * Biquaternion::unit_i());
  for (const auto& g : gens)
    for (double t : {-2.0, -0.3, 0.0, 1e-5, 0.7, 3.0}) {
      const auto e = exp_generator(g, t);
      const Eigen::Matrix2cd oracle = expm_oracle(t * to_matrix(g.value()));
      EXPECT_LT(matrix_gap(to_matrix(e), oracle), 1e-11 * std::max(1.0, oracle.cwiseAbs().maxCoeff()));
      EXPECT_LT(std::abs(quadratic_form(e) - 1.0), 1e-10 * std::max(1.0, coeff_norm(e) * coeff_norm(e)));
    }
}

TEST(SL2Generator, SplitExponential) {
  // e^{psi j} = cosh psi + j sinh psi, and exp(psi j) via the generator route agrees.
  const double psi = 0.8;
  const auto j = Biquaternion::split_unit();
  const auto e = exp_generator(SL2Generator(j), psi);
  EXPECT_LT(coeff_norm(e - (std::cosh(psi) * Biquaternion::one() + std::sinh(psi) * j)), 1e-14);
}
