#pragma once

// Gram-aware linear algebra shared by every stability computation.
//
// Coefficient vectors live in R^n; a GramMatrix G turns them into elements
// of an inner-product space with ||v||^2 = v^T G v. A DiscreteForm stores
// A[i][j] = a(phi_j, psi_i) for trial basis phi and test basis psi, so its
// rows index test functions and its columns index trial functions.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <vector>

#include "infsup/errors.hpp"

namespace infsup {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double>;
using Index = Eigen::Index;

/// Relative pivot threshold for Cholesky: pivot <= kSpdPivotTolerance * max diag fails.
inline constexpr double kSpdPivotTolerance = 1e-12;
/// Relative asymmetry accepted for a Gram matrix.
inline constexpr double kGramSymmetryTolerance = 1e-12;
/// Normalized singular values below this mark a structurally singular discrete problem.
inline constexpr double kSingularityThreshold = 1e-12;
/// Above this dimension sparse operators are not densified.
inline constexpr Index kDenseDimensionGuard = 5000;

/// Lower-triangular L with L L^T = G. Throws NotSPD on a non-positive or tiny pivot.
Matrix cholesky_factor(const Matrix& g);

/// Symmetric positive definite matrix of basis inner products with its Cholesky factor.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix entries);

  static GramMatrix identity(Index dim);

  [[nodiscard]] Index dim() const noexcept { return entries_.rows(); }
  [[nodiscard]] const Matrix& entries() const noexcept { return entries_; }
  /// Lower Cholesky factor L, G = L L^T.
  [[nodiscard]] const Matrix& factor() const noexcept { return lower_; }

  /// L^T v: maps G-geometry onto Euclidean geometry.
  [[nodiscard]] Vector to_euclidean(const Vector& v) const;
  [[nodiscard]] Matrix to_euclidean(const Matrix& m) const;
  /// L^{-T} y: inverse of to_euclidean.
  [[nodiscard]] Vector from_euclidean(const Vector& y) const;
  [[nodiscard]] Matrix from_euclidean(const Matrix& y) const;

  /// G restricted to range(E): E^T G E.
  [[nodiscard]] GramMatrix restricted(const Matrix& embedding) const;

  /// Block diagonal diag(a, b).
  static GramMatrix block_diagonal(const GramMatrix& a, const GramMatrix& b);

 private:
  Matrix entries_;
  Matrix lower_;
};

/// sqrt(v^T G v).
double gram_norm(const Vector& v, const GramMatrix& g);

/// Singular values of the Gram-normalized form matrix, descending.
class NormalizedSpectrum {
 public:
  NormalizedSpectrum(std::vector<double> singular_values, Index trial_dim, Index test_dim);

  [[nodiscard]] const std::vector<double>& singular_values() const noexcept { return values_; }
  [[nodiscard]] bool is_square() const noexcept { return trial_dim_ == test_dim_; }
  [[nodiscard]] Index trial_dim() const noexcept { return trial_dim_; }
  [[nodiscard]] Index test_dim() const noexcept { return test_dim_; }

  /// Largest normalized singular value: the continuity constant M_n.
  [[nodiscard]] double continuity() const;
  /// inf over unit trial u of sup over unit test v of |a(u,v)|. Zero when trial_dim > test_dim.
  [[nodiscard]] double inf_sup() const;

 private:
  std::vector<double> values_;
  Index trial_dim_;
  Index test_dim_;
};

/// A bilinear form restricted to a (trial, test) pair of finite-dimensional spaces.
class DiscreteForm {
 public:
  /// `matrix` is test_dim x trial_dim.
  DiscreteForm(Matrix matrix, GramMatrix gram_trial, GramMatrix gram_test);

  /// Form with identity Grams on both sides.
  static DiscreteForm euclidean(Matrix matrix);

  [[nodiscard]] Index trial_dim() const noexcept { return matrix_.cols(); }
  [[nodiscard]] Index test_dim() const noexcept { return matrix_.rows(); }
  [[nodiscard]] bool is_square() const noexcept { return matrix_.rows() == matrix_.cols(); }
  [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const GramMatrix& gram_trial() const noexcept { return gram_trial_; }
  [[nodiscard]] const GramMatrix& gram_test() const noexcept { return gram_test_; }

  /// a*(v, u) = a(u, v): transposed matrix with the Grams swapped.
  [[nodiscard]] DiscreteForm adjoint() const;

  /// a restricted to range(trial_embedding) x range(test_embedding).
  [[nodiscard]] DiscreteForm restricted(const Matrix& trial_embedding,
                                        const Matrix& test_embedding) const;

  /// L_test^{-1} A L_trial^{-T}: the matrix whose Euclidean singular values are the
  /// stability constants of the form.
  [[nodiscard]] Matrix normalized_matrix() const;

  /// a(u, v) for trial coefficients u and test coefficients v.
  [[nodiscard]] double evaluate(const Vector& u, const Vector& v) const;

 private:
  Matrix matrix_;
  GramMatrix gram_trial_;
  GramMatrix gram_test_;
};

NormalizedSpectrum normalized_spectrum(const DiscreteForm& form);

/// ||w - P w||_G where P is the G-orthogonal projection onto range(sub).
double best_approximation_distance(const Vector& w, const Matrix& sub, const GramMatrix& g);

/// Coefficients of the G-orthogonal projection of w onto range(sub), in the basis `sub`.
Vector best_approximation_coefficients(const Vector& w, const Matrix& sub, const GramMatrix& g);

struct ExtremeSingularValues {
  double smallest = 0.0;
  double largest = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct IterationControl {
  double relative_tolerance = 1e-10;
  int max_iterations = 10'000;
};

/// Extreme normalized singular values of a square sparse form. Densifies when the
/// dimension is at most kDenseDimensionGuard, otherwise runs power iteration for the
/// largest and inverse power iteration for the smallest on the normal equations.
ExtremeSingularValues extreme_singular_values(const SparseMatrix& a, const SparseMatrix& gram_trial,
                                              const SparseMatrix& gram_test,
                                              const IterationControl& control = {});

/// Iterative path only, regardless of size.
ExtremeSingularValues extreme_singular_values_iterative(const SparseMatrix& a,
                                                        const SparseMatrix& gram_trial,
                                                        const SparseMatrix& gram_test,
                                                        const IterationControl& control = {});

}  // namespace infsup
