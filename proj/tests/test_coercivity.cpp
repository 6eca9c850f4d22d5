#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "infsup/coercivity.hpp"
#include "infsup/random.hpp"

namespace infsup {
namespace {

Matrix alternating(Index n) {
  Matrix a = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    a(k, k) = k % 2 == 0 ? 1.0 : -1.0;
  }
  return a;
}

double sym_lambda_min(const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

TEST(CoercivityConstant, Examples) {
  const auto id = coercivity_constant(DiscreteForm::euclidean(Matrix::Identity(3, 3)));
  EXPECT_NEAR(id.alpha, 1.0, 1e-15);
  EXPECT_EQ(id.theta_star, 0.0);
  EXPECT_EQ(id.rank, 0);
  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  EXPECT_NEAR(coercivity_constant(DiscreteForm::euclidean(rot)).alpha, 0.0, 1e-15);
  EXPECT_EQ(coercivity_constant(DiscreteForm::euclidean(alternating(2))).alpha, 0.0);
}

TEST(CoercivityConstant, NegativeDefiniteRotatesByPi) {
  const auto c = coercivity_constant(DiscreteForm::euclidean(-2.0 * Matrix::Identity(2, 2)));
  EXPECT_NEAR(c.alpha, 2.0, 1e-15);
  EXPECT_EQ(c.theta_star, std::numbers::pi);
}

TEST(CoercivityConstant, ComplexModeAgreesWithRealModeForRealForms) {
  // The complex numerical range of a real form is symmetric about the real axis,
  // so its best rotation is 0 or pi.
  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 5;
    const DiscreteForm f(rng.normal_matrix(n, n) + 3.0 * Matrix::Identity(n, n),
                         GramMatrix::identity(n), GramMatrix::identity(n));
    const double real = coercivity_constant(f, ScalarField::Real).alpha;
    const double complex = coercivity_constant(f, ScalarField::Complex).alpha;
    EXPECT_NEAR(real, complex, 1e-10);
  }
}

TEST(CoercivityConstant, RandomUnitVectorsRespectAlpha) {
  Rng rng(32);
  const Index n = 6;
  const Matrix gm = rng.spd(n);
  const GramMatrix g(gm);
  const DiscreteForm f(gm + 0.3 * rng.normal_matrix(n, n), g, g);
  const auto c = coercivity_constant(f);
  ASSERT_GT(c.alpha, 0.0);
  const double sign = std::cos(c.theta_star);
  for (int k = 0; k < 1000; ++k) {
    const Vector u = rng.unit_vector(g);
    EXPECT_GE(sign * f.evaluate(u, u), c.alpha - 1e-10);
  }
}

TEST(CoercivityConstant, InvariantUnderGramOrthogonalChange) {
  Rng rng(33);
  const Index n = 6;
  const Matrix b = rng.normal_matrix(n, n) + 4.0 * Matrix::Identity(n, n);
  const double base = coercivity_constant(DiscreteForm::euclidean(b)).alpha;
  const Matrix q = rng.orthogonal(n);
  EXPECT_NEAR(coercivity_constant(DiscreteForm::euclidean(q.transpose() * b * q)).alpha, base,
              1e-10);
}

TEST(CoercivityConstant, ScalesLinearly) {
  Rng rng(34);
  const Index n = 5;
  const DiscreteForm f(rng.normal_matrix(n, n) + 4.0 * Matrix::Identity(n, n),
                       GramMatrix(rng.spd(n)), GramMatrix::identity(n));
  const GramMatrix g(rng.spd(n));
  const Matrix a = rng.normal_matrix(n, n) + 4.0 * g.entries();
  const double base = coercivity_constant(DiscreteForm(a, g, g)).alpha;
  ASSERT_GT(base, 0.0);
  for (const double t : {0.5, 2.0, 10.0}) {
    EXPECT_NEAR(coercivity_constant(DiscreteForm(t * a, g, g)).alpha, t * base, 1e-10 * t * base);
  }
}

TEST(CoercivityConstant, MatchesSymmetricPartMinimum) {
  Rng rng(35);
  const Index n = 8;
  const Matrix b = rng.normal_matrix(n, n) + 5.0 * Matrix::Identity(n, n);
  EXPECT_NEAR(coercivity_constant(DiscreteForm::euclidean(b)).alpha, sym_lambda_min(b), 1e-10);
}

TEST(NumericalRange, RealModeUsesTwoAngles) {
  const auto s = numerical_range(DiscreteForm::euclidean(alternating(4)), ScalarField::Real);
  ASSERT_EQ(s.angles.size(), 2u);
  EXPECT_NEAR(s.support_values[0], -1.0, 1e-15);
  EXPECT_NEAR(s.support_values[1], -1.0, 1e-15);
  const auto c = numerical_range(DiscreteForm::euclidean(Matrix::Identity(2, 2)),
                                 ScalarField::Complex, 8);
  ASSERT_EQ(c.angles.size(), 8u);
  for (std::size_t j = 0; j < c.angles.size(); ++j) {
    EXPECT_NEAR(c.support_values[j], std::cos(c.angles[j]), 1e-14);
  }
}

TEST(EssentialCoercivity, CoerciveFormNeedsNoAugmentation) {
  const auto c = essential_coercivity_certificate(
      DiscreteForm::euclidean(Matrix::Identity(4, 4) * 3.0), 2);
  EXPECT_EQ(c.rank, 0);
  EXPECT_NEAR(c.alpha, 3.0, 1e-14);
}

TEST(EssentialCoercivity, SingleFlipNeedsRankOne) {
  Matrix b = Matrix::Identity(5, 5);
  b(0, 0) = -1.0;
  const DiscreteForm f = DiscreteForm::euclidean(b);
  const auto c = essential_coercivity_certificate(f, 3);
  EXPECT_EQ(c.rank, 1);
  EXPECT_NEAR(c.weight, 2.0, 1e-14);
  EXPECT_GE(c.alpha, 1.0 - 1e-12);
  EXPECT_NEAR(certificate_margin(f, c), c.alpha, 1e-14);
  // The projector basis spans e_0.
  EXPECT_NEAR(std::abs(c.projector_basis(0, 0)), 1.0, 1e-14);
  const auto coord = essential_coercivity_certificate(f, 3, ProxyKind::Coordinate);
  EXPECT_EQ(coord.rank, 1);
  EXPECT_GT(coord.alpha, 0.0);
}

TEST(EssentialCoercivity, AlternatingFormNeedsHalfTheDimension) {
  for (const Index m : {1, 2, 3, 5}) {
    const DiscreteForm f = DiscreteForm::euclidean(alternating(2 * m));
    const auto below = essential_coercivity_certificate(f, static_cast<int>(m) - 1);
    EXPECT_EQ(below.alpha, 0.0);
    EXPECT_EQ(below.rank, m - 1);
    const auto at = essential_coercivity_certificate(f, static_cast<int>(2 * m));
    EXPECT_EQ(at.rank, m);
    EXPECT_GT(at.alpha, 0.0);
  }
}

TEST(EssentialCoercivity, AlphaMonotoneInMaxRank) {
  Rng rng(36);
  const Index n = 8;
  Matrix b = rng.normal_matrix(n, n) * 0.2;
  for (Index k = 0; k < n; ++k) {
    b(k, k) += k < 3 ? -2.0 : 2.0;
  }
  const DiscreteForm f = DiscreteForm::euclidean(b);
  double prev = 0.0;
  for (int r = 0; r <= static_cast<int>(n); ++r) {
    const double alpha = essential_coercivity_certificate(f, r).alpha;
    EXPECT_GE(alpha, prev - 1e-12);
    prev = std::max(prev, alpha);
  }
  EXPECT_GT(prev, 0.0);
}

TEST(EssentialCoercivity, CertificateVerifiesWithIndependentEigensolve) {
  Rng rng(37);
  const Index n = 7;
  const Matrix gm = rng.spd(n);
  const GramMatrix g(gm);
  Matrix a = gm;
  const Vector v = rng.normal_vector(n);
  a -= 3.0 * (gm * v) * (gm * v).transpose() / (v.transpose() * gm * v);
  const DiscreteForm f(a, g, g);
  const auto c = essential_coercivity_certificate(f, 3);
  ASSERT_EQ(c.rank, 1);
  // Re a(u,u) + weight |<u, p>_G|^2 >= alpha ||u||_G^2 as a generalized eigenproblem.
  const Vector p = c.projector_basis.col(0).real();
  Matrix lhs = std::cos(c.theta_star) * 0.5 * (a + a.transpose()) +
               c.weight * (gm * p) * (gm * p).transpose();
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(lhs, gm, Eigen::EigenvaluesOnly);
  EXPECT_NEAR(es.eigenvalues()(0), c.alpha, 1e-9);
}

TEST(Garding, PurePrincipalPartNeedsNoShift) {
  Rng rng(38);
  const Index n = 6;
  const Matrix m = rng.spd(n);
  const Matrix k = rng.spd(n);
  const GramMatrix gv(k + m);
  const auto c = garding_constants(k + m, Matrix::Zero(n, n), gv, GramMatrix(m));
  EXPECT_EQ(c.c_shift, 0.0);
  EXPECT_NEAR(c.alpha, 0.5, 1e-12);
}

TEST(Garding, ConstantReactionShiftIsBounded) {
  Rng rng(39);
  const Index n = 8;
  const Matrix m = rng.spd(n);
  const Matrix k = rng.spd(n);
  const GramMatrix gv(k + m);
  const GramMatrix gh(m);
  const auto c = garding_constants(k + m, -5.0 * m, gv, gh);
  EXPECT_GT(c.c_shift, 0.0);
  EXPECT_LE(c.c_shift, 5.0 + c.alpha);
  // The shifted form dominates alpha G_V, tightly.
  const Matrix shifted = k + m - 5.0 * m + c.c_shift * m - c.alpha * (k + m);
  Eigen::SelfAdjointEigenSolver<Matrix> es(shifted, Eigen::EigenvaluesOnly);
  EXPECT_GE(es.eigenvalues()(0), -1e-10);
  EXPECT_LT(es.eigenvalues()(0), 1e-8);
}

TEST(Garding, NonEllipticPrincipalPartFails) {
  const Index n = 3;
  try {
    garding_constants(-Matrix::Identity(n, n), Matrix::Zero(n, n), GramMatrix::identity(n),
                      GramMatrix::identity(n));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoShiftFound);
  }
}

}  // namespace
}  // namespace infsup
