#include <gtest/gtest.h>

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

#include "infsup/random.hpp"
#include "infsup/saddle.hpp"

namespace infsup::saddle {
namespace {

Matrix row(std::initializer_list<double> v) {
  Matrix m(1, static_cast<Index>(v.size()));
  Index j = 0;
  for (const double x : v) m(0, j++) = x;
  return m;
}

// Monte-Carlo upper bounds on the inf-sup constants: each sampled direction has its
// supremum evaluated exactly through a dual norm, so the minimum over samples can only
// overestimate the infimum.
struct SampledBounds {
  double beta_i = std::numeric_limits<double>::infinity();
  double beta_iii = std::numeric_limits<double>::infinity();
};

SampledBounds sample_inf_sup(const SaddleSystem& sys, int samples, Rng& rng) {
  const Matrix& gw = sys.gram_w().entries();
  const Matrix& gy = sys.gram_y().entries();
  const Matrix& a = sys.a_hat();
  const Matrix& b = sys.b_hat();
  Eigen::FullPivLU<Matrix> lu(b);
  const Matrix kernel = lu.kernel();
  const Matrix gk = kernel.transpose() * gw * kernel;
  const Eigen::LDLT<Matrix> gk_solver(gk);
  const Eigen::LDLT<Matrix> gw_solver(gw);
  SampledBounds out;
  for (int s = 0; s < samples; ++s) {
    const Vector p = rng.normal_vector(sys.y_dim());
    const Vector r = b.transpose() * p;
    const double sup_z = std::sqrt(r.dot(gw_solver.solve(r)));
    out.beta_iii = std::min(out.beta_iii, sup_z / std::sqrt(p.dot(gy * p)));
    if (kernel.cols() > 0) {
      const Vector w = kernel * rng.normal_vector(kernel.cols());
      const Vector rk = kernel.transpose() * (a * w);
      const double sup_k = std::sqrt(rk.dot(gk_solver.solve(rk)));
      out.beta_i = std::min(out.beta_i, sup_k / std::sqrt(w.dot(gw * w)));
    }
  }
  return out;
}

TEST(BlockEmbed, HandExample) {
  const SaddleSystem sys = SaddleSystem::euclidean(Matrix::Identity(2, 2), row({1, 0}));
  Matrix expected(3, 3);
  expected << 1, 0, 1, 0, 1, 0, 1, 0, 0;
  EXPECT_EQ(block_embed(sys).matrix(), expected);
}

TEST(BlockEmbed, ZeroConstraintIsSingularAndSymmetryIsKept) {
  Rng rng(61);
  const Matrix s = rng.spd(3);
  const auto zero = block_embed(SaddleSystem::euclidean(s, Matrix::Zero(1, 3)));
  EXPECT_EQ(normalized_spectrum(zero).inf_sup(), 0.0);
  const auto sym = block_embed(SaddleSystem::euclidean(s, rng.normal_matrix(2, 3)));
  EXPECT_EQ(sym.matrix(), sym.matrix().transpose());
}

TEST(SaddleSystemTest, Validation) {
  try {
    SaddleSystem::euclidean(Matrix::Identity(2, 2), Matrix::Zero(0, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPressureSpace);
  }
  EXPECT_THROW(SaddleSystem::euclidean(Matrix::Identity(2, 2), Matrix::Zero(1, 3)), Error);
  EXPECT_THROW(SaddleSystem::euclidean(Matrix::Identity(2, 3), Matrix::Zero(1, 3)), Error);
}

TEST(BrezziConstantsTest, HandExample) {
  const auto c = brezzi_constants(SaddleSystem::euclidean(Matrix::Identity(2, 2), row({1, 0})));
  EXPECT_EQ(c.kernel_dim, 1);
  EXPECT_NEAR(c.beta_i, 1.0, 1e-15);
  EXPECT_NEAR(c.beta_ii, 1.0, 1e-15);
  EXPECT_NEAR(c.beta_iii, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(c.kernel_basis(1, 0)), 1.0, 1e-15);
}

TEST(BrezziConstantsTest, UnusedPressureMode) {
  Matrix b = Matrix::Zero(2, 3);
  b(0, 0) = 1.0;
  const auto c = brezzi_constants(SaddleSystem::euclidean(Matrix::Identity(3, 3), b));
  EXPECT_EQ(c.beta_iii, 0.0);
  EXPECT_EQ(c.kernel_dim, 2);
}

TEST(BrezziConstantsTest, EmptyKernelIsReported) {
  const auto c = brezzi_constants(SaddleSystem::euclidean(Matrix::Identity(2, 2), Matrix::Identity(2, 2)));
  EXPECT_TRUE(c.empty_kernel);
  EXPECT_EQ(c.kernel_dim, 0);
  EXPECT_TRUE(std::isinf(c.beta_i));
  EXPECT_NEAR(c.beta_iii, 1.0, 1e-15);
}

TEST(BrezziConstantsTest, MonteCarloBoundsOnRandomStableSystems) {
  Rng rng(62);
  for (int trial = 0; trial < 3; ++trial) {
    const Index nw = 5;
    const Index ny = 2;
    const Matrix gw = rng.spd(nw, 5.0);
    const SaddleSystem sys(rng.spd(nw, 5.0) + 0.2 * rng.normal_matrix(nw, nw),
                           rng.normal_matrix(ny, nw), GramMatrix(gw), GramMatrix(rng.spd(ny, 5.0)));
    const auto c = brezzi_constants(sys);
    ASSERT_GT(c.beta_i, 0.0);
    ASSERT_GT(c.beta_iii, 0.0);
    EXPECT_EQ(c.kernel_dim, nw - ny);
    const auto mc = sample_inf_sup(sys, 100000, rng);
    EXPECT_LE(c.beta_i, mc.beta_i * (1 + 1e-12));
    EXPECT_LE(c.beta_iii, mc.beta_iii * (1 + 1e-12));
    EXPECT_GT(c.beta_i, 0.8 * mc.beta_i);
    EXPECT_GT(c.beta_iii, 0.8 * mc.beta_iii);
  }
}

TEST(BrezziConstantsTest, KernelConstantsAgreeForNonsymmetricPrincipalPart) {
  Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const Index nw = rng.integer(3, 10);
    const Index ny = rng.integer(1, static_cast<int>(nw) - 1);
    const SaddleSystem sys(rng.normal_matrix(nw, nw), rng.normal_matrix(ny, nw),
                           GramMatrix(rng.spd(nw)), GramMatrix(rng.spd(ny)));
    const auto c = brezzi_constants(sys);
    EXPECT_LE(std::abs(c.beta_i - c.beta_ii), 1e-10 * std::max(1.0, c.beta_i));
  }
}

TEST(BrezziConstantsTest, ScalingTheConstraint) {
  Rng rng(64);
  const SaddleSystem sys(rng.spd(6), rng.normal_matrix(3, 6), GramMatrix(rng.spd(6)),
                         GramMatrix::identity(3));
  const auto base = brezzi_constants(sys);
  for (const double t : {0.5, 2.0, 10.0}) {
    const auto scaled = brezzi_constants(sys.with_scaled_constraint(t));
    EXPECT_NEAR(scaled.beta_iii, t * base.beta_iii, 1e-12 * t * base.beta_iii);
    EXPECT_NEAR(scaled.beta_i, base.beta_i, 1e-10 * base.beta_i);
  }
}

TEST(MixedSolve, HandExample) {
  const SaddleSystem sys = SaddleSystem::euclidean(Matrix::Identity(2, 2), row({1, 0}));
  const auto sol = mixed_solve(sys, Vector::Ones(2), Vector::Constant(1, 2.0));
  EXPECT_NEAR(sol.w(0), 2.0, 1e-12);
  EXPECT_NEAR(sol.w(1), 1.0, 1e-12);
  EXPECT_NEAR(sol.p(0), -1.0, 1e-12);
  const auto zero = mixed_solve(sys, Vector::Zero(2), Vector::Zero(1));
  EXPECT_EQ(zero.w.norm() + zero.p.norm(), 0.0);
}

TEST(MixedSolve, ConstraintIsSatisfiedAndSingularSystemsFail) {
  Rng rng(65);
  const SaddleSystem sys(rng.spd(8), rng.normal_matrix(3, 8), GramMatrix(rng.spd(8)),
                         GramMatrix(rng.spd(3)));
  const auto sol = mixed_solve(sys, rng.normal_vector(8), rng.normal_vector(3));
  EXPECT_LE(sol.residual_constraint, 1e-9 * sol.scale);
  EXPECT_LE(sol.residual_momentum, 1e-9 * sol.scale);
  EXPECT_THROW(mixed_solve(SaddleSystem::euclidean(Matrix::Identity(2, 2), Matrix::Zero(1, 2)),
                           Vector::Ones(2), Vector::Ones(1)),
               Error);
}

TEST(Equivalence, SignAgreementOnExamples) {
  const auto stable = brezzi_bnb_equivalence(family_level(Family::Stable, 3));
  EXPECT_TRUE(stable.brezzi_holds);
  EXPECT_TRUE(stable.bnb_holds);
  const auto zero = brezzi_bnb_equivalence(SaddleSystem::euclidean(Matrix::Identity(2, 2), Matrix::Zero(1, 2)));
  EXPECT_FALSE(zero.brezzi_holds);
  EXPECT_FALSE(zero.bnb_holds);
  EXPECT_EQ(zero.global_beta, 0.0);
  // a_hat annihilates the kernel span(e_2) while b_hat is onto.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const auto degenerate = brezzi_bnb_equivalence(SaddleSystem::euclidean(a, row({1, 0})));
  EXPECT_EQ(degenerate.brezzi.beta_i, 0.0);
  EXPECT_GT(degenerate.brezzi.beta_iii, 0.0);
  EXPECT_LT(degenerate.global_beta, 1e-14);
  EXPECT_TRUE(degenerate.equivalent());
}

TEST(Equivalence, RandomSystems) {
  Rng rng(66);
  for (int trial = 0; trial < 30; ++trial) {
    const Index nw = rng.integer(2, 8);
    const Index ny = rng.integer(1, static_cast<int>(nw));
    Matrix b = rng.normal_matrix(ny, nw);
    if (trial % 3 == 0) b.row(0).setZero();
    Matrix a = rng.normal_matrix(nw, nw);
    const auto r = brezzi_bnb_equivalence(SaddleSystem(a, b, GramMatrix(rng.spd(nw)), GramMatrix(rng.spd(ny))));
    EXPECT_TRUE(r.equivalent()) << "trial " << trial;
  }
}

TEST(Families, StableConstantsAreUniform) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const auto c = brezzi_constants(family_level(Family::Stable, n));
    const double m = std::min({c.beta_i, c.beta_ii, c.beta_iii});
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    EXPECT_LE(std::abs(c.beta_i - c.beta_ii), 1e-10);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT((hi - lo) / hi, 0.1);
}

TEST(Families, UnstableConstraintHalves) {
  double prev = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const auto c = brezzi_constants(family_level(Family::Unstable, n));
    EXPECT_NEAR(c.beta_iii, std::ldexp(1.0, -n), 1e-15);
    EXPECT_FALSE(c.empty_kernel);
    if (n > 1) EXPECT_GE(prev / c.beta_iii, 2.0 - 1e-12);
    prev = c.beta_iii;
  }
}

TEST(Families, FourierStokesMatchesPerModeSvd) {
  for (int n = 1; n <= 4; ++n) {
    // Per wavevector: normalized b = k^T / sqrt(1+|k|^2), normalized a = |k|^2/(1+|k|^2) on k-perp.
    double beta_i = std::numeric_limits<double>::infinity();
    double beta_iii = std::numeric_limits<double>::infinity();
    for (int k1 = -n; k1 <= n; ++k1) {
      for (int k2 = -n; k2 <= n; ++k2) {
        if (k1 == 0 && k2 == 0) continue;
        const double ksq = k1 * k1 + k2 * k2;
        Eigen::Matrix<double, 1, 2> b;
        b << k1 / std::sqrt(1 + ksq), k2 / std::sqrt(1 + ksq);
        Eigen::JacobiSVD<Eigen::Matrix<double, 1, 2>> svd(b);
        beta_iii = std::min(beta_iii, svd.singularValues()(0));
        beta_i = std::min(beta_i, ksq / (1 + ksq));
      }
    }
    const auto c = brezzi_constants(family_level(Family::FourierStokes, n));
    EXPECT_NEAR(c.beta_iii, beta_iii, 1e-12);
    EXPECT_NEAR(c.beta_i, beta_i, 1e-12);
    EXPECT_NEAR(c.beta_i, 0.5, 1e-12);
    EXPECT_NEAR(c.beta_iii, 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_EQ(c.kernel_dim, (2 * n + 1) * (2 * n + 1) - 1);
  }
}

TEST(Refinement, StableFamilyErrorIsBoundedByDistance) {
  Rng rng(67);
  const int levels = 6;
  const SaddleSystem finest = family_level(Family::Stable, levels);
  std::vector<std::pair<Index, Index>> dims;
  for (int n = 1; n <= levels; ++n) dims.emplace_back(2 * n, n);
  const auto study = refinement_study(finest, dims, rng.normal_vector(finest.w_dim()),
                                      rng.normal_vector(finest.y_dim()));
  ASSERT_EQ(study.size(), 6u);
  for (std::size_t k = 0; k + 1 < study.size(); ++k) {
    EXPECT_GT(study[k].distance, 0.0);
    EXPECT_LT(study[k].constant, 10.0);
    EXPECT_GE(study[k].constant, 1.0 / std::sqrt(2.0) - 1e-12);
  }
  EXPECT_LT(study.back().error, 1e-12);
}

}  // namespace
}  // namespace infsup::saddle
