#include <gtest/gtest.h>

#include <cmath>

#include "infsup/random.hpp"
#include "infsup/spectral.hpp"
#include "oracles.hpp"

namespace infsup::spectral {
namespace {

TEST(SpectralOperatorTest, Validation) {
  EXPECT_THROW(SpectralOperator({1.0}), Error);
  EXPECT_THROW(SpectralOperator({0.0, 1.0}), Error);
  EXPECT_THROW(SpectralOperator({2.0, 1.0}), Error);
  const auto op = SpectralOperator::dirichlet_laplacian(4);
  EXPECT_EQ(op.eigenvalue(3), 16.0);
  EXPECT_THROW((void)op.eigenvalue(4), Error);
}

TEST(VsNorm, Examples) {
  const SpectralOperator op({2.0, 4.0, 9.0});
  for (const double s : {-1.0, 0.0, 0.5, 1.0}) {
    EXPECT_NEAR(vs_norm(op, {{1.0}, s}), std::pow(2.0, s / 2.0), 1e-15);
  }
  EXPECT_NEAR(vs_norm(op, {{0.0, 0.0, 1.0}, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(vs_norm(SpectralOperator({1.0, 4.0}), {{1.0, 1.0}, 1.0}), std::sqrt(5.0), 1e-15);
  EXPECT_THROW(vs_norm(op, {{1.0}, 1.5}), Error);
}

TEST(GammaN, ClosedFormCases) {
  const auto op = SpectralOperator::dirichlet_laplacian(10);
  EXPECT_NEAR(gamma_n(op, 0.0, 3), 1.0 / 4.0, 1e-15);
  EXPECT_NEAR(gamma_n(op, -1.0, 5), 1.0, 1e-15);
  EXPECT_NEAR(gamma_n(op, 1.0, 2), 1.0 / 9.0, 1e-15);
  EXPECT_THROW(gamma_n(op, 0.0, 10), Error);
}

TEST(GammaN, FourierSpanMatchesShiftedIndex) {
  // V_n = span{e_k : |k| < n} has 2n - 1 modes; the first excluded eigenvalue is 1 + n^2.
  const auto op = fourier_operator(40);
  for (const int n : {1, 2, 5, 17}) {
    EXPECT_NEAR(gamma_n(op, 0.0, fourier_space_dim(n)), 1.0 / std::sqrt(1.0 + n * n), 1e-15);
  }
}

TEST(GammaN, MatchesBruteForceSupremum) {
  Rng rng(41);
  const auto op = SpectralOperator::dirichlet_laplacian(48);
  const Matrix q = rng.orthogonal(op.size());
  for (const double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (const int n : {1, 4, 12, 24}) {
      const double closed = gamma_n(op, s, n);
      const double brute = oracle::gamma_brute_force(op.eigenvalues(), s, n, q);
      EXPECT_NEAR(brute, closed, 1e-8 * closed) << "s=" << s << " n=" << n;
    }
  }
}

TEST(GammaN, CompactnessDichotomy) {
  const auto op = SpectralOperator::dirichlet_laplacian(32);
  for (int n = 1; n < 31; ++n) {
    EXPECT_EQ(gamma_n(op, -1.0, n), 1.0);
    for (const double s : {-0.5, 0.0, 1.0}) {
      EXPECT_LT(gamma_n(op, s, n), gamma_n(op, s, n - 1));
    }
  }
}

TEST(SpectralSolve, Examples) {
  const SpectralOperator op({1.0, 2.0, 4.0});
  const auto single = spectral_solve(op, {3.0}, 1);
  EXPECT_EQ(single.exact[0], 3.0);
  EXPECT_EQ(single.galerkin[0], 3.0);
  const auto sol = spectral_solve(op, {1.0, 1.0, 1.0}, 2);
  EXPECT_EQ(sol.galerkin, (std::vector<double>{1.0, 0.5, 0.0}));
  EXPECT_EQ(error_vs_bound(op, {{1.0, 1.0, 1.0}, 0.0}, 2).error_h, 0.25);
  const auto tail = error_vs_bound(op, {{0.0, 0.0, 1.0}, 0.0}, 1);
  EXPECT_EQ(tail.error_h, 0.25);
}

TEST(ErrorBound, EqualityOnEigenvectors) {
  const auto op = SpectralOperator::dirichlet_laplacian(40);
  for (const double s : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (const int n : {0, 1, 7, 20, 38}) {
      std::vector<double> f(40, 0.0);
      f[static_cast<std::size_t>(n)] = 1.0;
      const auto eb = error_vs_bound(op, {f, s}, n);
      EXPECT_NEAR(eb.error_h, eb.bound, 1e-10 * eb.bound);
    }
  }
}

TEST(ErrorBound, NeverExceededOnRandomData) {
  Rng rng(42);
  const auto op = SpectralOperator::dirichlet_laplacian(64);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(64);
    for (double& v : f) {
      v = rng.normal() / (1.0 + rng.uniform() * 10.0);
    }
    const double s = rng.uniform(-1.0, 1.0);
    const int n = rng.integer(0, 62);
    const auto eb = error_vs_bound(op, {f, s}, n);
    EXPECT_LE(eb.error_h, eb.bound * (1 + 1e-12));
  }
  std::vector<double> low(64, 0.0);
  low[0] = low[3] = 1.0;
  EXPECT_EQ(error_vs_bound(op, {low, 0.0}, 4).error_h, 0.0);
}

TEST(ErrorBound, FourierFiniteSumOracle) {
  // f_k = 1 / (1 + k^2), s = 1, n = 4: the error tail and bound as closed sums over |k| <= K.
  const int kmax = 32;
  std::map<int, double> f;
  double tail = 0.0;
  double norm_sq = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    const double lam = 1.0 + k * k;
    f[k] = 1.0 / lam;
    norm_sq += lam / (lam * lam);
    if (std::abs(k) >= 4) {
      tail += 1.0 / (lam * lam * lam * lam);
    }
  }
  const auto r = fourier_example(4, f, 1.0, kmax);
  EXPECT_NEAR(r.error_l2, std::sqrt(tail), 1e-15);
  EXPECT_NEAR(r.bound, std::pow(17.0, -1.5) * std::sqrt(norm_sq), 1e-15);
  EXPECT_TRUE(r.bound_holds);
}

TEST(FourierExample, ModeOrdering) {
  for (int p = 0; p < 21; ++p) {
    EXPECT_EQ(fourier_position(fourier_mode(p)), p);
  }
  EXPECT_EQ(fourier_position(-1), 1);
  EXPECT_EQ(fourier_position(1), 2);
  EXPECT_EQ(fourier_position(-2), 3);
}

TEST(FourierExample, ConstantModeIsExact) {
  const auto r = fourier_example(1, {{0, 2.0}}, 0.0);
  EXPECT_EQ(r.error_l2, 0.0);
}

TEST(FourierExample, SingleModeAtTheBoundary) {
  for (const int n : {2, 4, 8, 16, 32}) {
    for (const int sign : {-1, 1}) {
      const auto r = fourier_example(n, {{sign * n, 1.0}}, 0.0);
      EXPECT_NEAR(r.error_l2, 1.0 / (1.0 + n * n), 1e-15);
      EXPECT_NEAR(r.bound_l2, 1.0 / std::sqrt(1.0 + n * n), 1e-15);
      EXPECT_TRUE(r.bound_l2_holds);
      EXPECT_TRUE(r.bound_holds);
    }
  }
}

TEST(FourierExample, RejectsDataBeyondTruncation) {
  EXPECT_THROW(fourier_example(2, {{20, 1.0}}, 0.0, 10), Error);
  EXPECT_THROW(fourier_example(0, {{0, 1.0}}, 0.0), Error);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TEST(FourierExample, DecayRates) {
  const std::vector<int> levels{2, 4, 8, 16, 32};
  for (const double s : {-0.5, 0.0, 0.5, 1.0}) {
    std::vector<double> x, worst, smooth;
    std::map<int, double> exp_decay;
    for (int k = -256; k <= 256; ++k) {
      exp_decay[k] = std::exp(-std::abs(k));
    }
    for (const int n : levels) {
      const double lam = 1.0 + n * n;
      x.push_back(0.5 * std::log(lam));
      // Unit V_s data concentrated on the first excluded mode: the worst case.
      const auto w = fourier_example(n, {{n, std::pow(lam, -s / 2.0)}}, s, 256);
      worst.push_back(std::log(w.error_l2));
      const auto r = fourier_example(n, exp_decay, s, 256);
      EXPECT_TRUE(r.bound_holds);
      smooth.push_back(std::log(r.error_l2));
    }
    EXPECT_NEAR(slope(x, worst), -(2.0 + s), 0.1);
    EXPECT_LE(slope(x, smooth), -(2.0 + s) + 0.1);
  }
}

}  // namespace
}  // namespace infsup::spectral
