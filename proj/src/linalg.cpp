#include "infsup/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace infsup {

namespace {

std::string dims(Index r, Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

std::vector<double> singular_values_of(const Matrix& m) {
  if (m.size() == 0) {
    return {};
  }
  Vector sv;
  // Jacobi keeps high relative accuracy for tiny singular values; the
  // divide-and-conquer variant is only used once the cost starts to matter.
  if (std::min(m.rows(), m.cols()) <= 256) {
    Eigen::JacobiSVD<Matrix> svd(m);
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(m);
    sv = svd.singularValues();
  }
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

Matrix cholesky_factor(const Matrix& g) {
  INFSUP_THROW_IF(g.rows() != g.cols(), ErrorCode::DimensionMismatch,
                  "Gram matrix must be square, got " + dims(g.rows(), g.cols()));
  INFSUP_THROW_IF(g.rows() == 0, ErrorCode::NotSPD, "empty Gram matrix");
  const double max_diag = g.diagonal().maxCoeff();
  INFSUP_THROW_IF(!(max_diag > 0.0), ErrorCode::NotSPD, "non-positive diagonal");
  Eigen::LLT<Matrix> llt(g);
  INFSUP_THROW_IF(llt.info() != Eigen::Success, ErrorCode::NotSPD,
                  "Cholesky factorization failed (matrix not positive definite)");
  Matrix lower = llt.matrixL();
  const double tol = kSpdPivotTolerance * max_diag;
  for (Index i = 0; i < lower.rows(); ++i) {
    const double pivot = lower(i, i) * lower(i, i);
    INFSUP_THROW_IF(!(pivot > tol), ErrorCode::NotSPD,
                    "pivot " + std::to_string(i) + " below tolerance");
  }
  return lower;
}

GramMatrix::GramMatrix(Matrix entries) : entries_(std::move(entries)) {
  INFSUP_THROW_IF(entries_.rows() != entries_.cols(), ErrorCode::DimensionMismatch,
                  "Gram matrix must be square, got " + dims(entries_.rows(), entries_.cols()));
  INFSUP_THROW_IF(entries_.rows() == 0, ErrorCode::NotSPD, "empty Gram matrix");
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  INFSUP_THROW_IF(asym > kGramSymmetryTolerance * scale, ErrorCode::NotSPD,
                  "Gram matrix is not symmetric");
  lower_ = cholesky_factor(entries_);
}

GramMatrix GramMatrix::identity(Index dim) {
  return GramMatrix(Matrix::Identity(dim, dim));
}

Vector GramMatrix::to_euclidean(const Vector& v) const {
  INFSUP_THROW_IF(v.size() != dim(), ErrorCode::DimensionMismatch,
                  "vector of size " + std::to_string(v.size()) + " vs Gram " +
                      std::to_string(dim()));
  return lower_.transpose() * v;
}

Matrix GramMatrix::to_euclidean(const Matrix& m) const {
  INFSUP_THROW_IF(m.rows() != dim(), ErrorCode::DimensionMismatch,
                  "matrix rows " + std::to_string(m.rows()) + " vs Gram " +
                      std::to_string(dim()));
  return lower_.transpose() * m;
}

Vector GramMatrix::from_euclidean(const Vector& y) const {
  INFSUP_THROW_IF(y.size() != dim(), ErrorCode::DimensionMismatch, "size mismatch");
  return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix GramMatrix::from_euclidean(const Matrix& y) const {
  INFSUP_THROW_IF(y.rows() != dim(), ErrorCode::DimensionMismatch, "size mismatch");
  return lower_.transpose().triangularView<Eigen::Upper>().solve(y);
}

GramMatrix GramMatrix::restricted(const Matrix& embedding) const {
  INFSUP_THROW_IF(embedding.rows() != dim(), ErrorCode::DimensionMismatch,
                  "embedding rows " + std::to_string(embedding.rows()) + " vs Gram " +
                      std::to_string(dim()));
  Matrix r = embedding.transpose() * entries_ * embedding;
  r = 0.5 * (r + r.transpose()).eval();
  return GramMatrix(std::move(r));
}

GramMatrix GramMatrix::block_diagonal(const GramMatrix& a, const GramMatrix& b) {
  const Index n = a.dim() + b.dim();
  Matrix g = Matrix::Zero(n, n);
  g.topLeftCorner(a.dim(), a.dim()) = a.entries();
  g.bottomRightCorner(b.dim(), b.dim()) = b.entries();
  return GramMatrix(std::move(g));
}

double gram_norm(const Vector& v, const GramMatrix& g) {
  return g.to_euclidean(v).norm();
}

NormalizedSpectrum::NormalizedSpectrum(std::vector<double> singular_values, Index trial_dim,
                                       Index test_dim)
    : values_(std::move(singular_values)), trial_dim_(trial_dim), test_dim_(test_dim) {
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

double NormalizedSpectrum::continuity() const {
  return values_.empty() ? 0.0 : values_.front();
}

double NormalizedSpectrum::inf_sup() const {
  if (values_.empty() || trial_dim_ > test_dim_) {
    return 0.0;
  }
  return values_.back();
}

DiscreteForm::DiscreteForm(Matrix matrix, GramMatrix gram_trial, GramMatrix gram_test)
    : matrix_(std::move(matrix)),
      gram_trial_(std::move(gram_trial)),
      gram_test_(std::move(gram_test)) {
  INFSUP_THROW_IF(matrix_.cols() != gram_trial_.dim() || matrix_.rows() != gram_test_.dim(),
                  ErrorCode::DimensionMismatch,
                  "form matrix " + dims(matrix_.rows(), matrix_.cols()) + " vs Grams (test " +
                      std::to_string(gram_test_.dim()) + ", trial " +
                      std::to_string(gram_trial_.dim()) + ")");
}

DiscreteForm DiscreteForm::euclidean(Matrix matrix) {
  const Index rows = matrix.rows();
  const Index cols = matrix.cols();
  return DiscreteForm(std::move(matrix), GramMatrix::identity(cols), GramMatrix::identity(rows));
}

DiscreteForm DiscreteForm::adjoint() const {
  return DiscreteForm(matrix_.transpose(), gram_test_, gram_trial_);
}

DiscreteForm DiscreteForm::restricted(const Matrix& trial_embedding,
                                      const Matrix& test_embedding) const {
  INFSUP_THROW_IF(trial_embedding.rows() != trial_dim() || test_embedding.rows() != test_dim(),
                  ErrorCode::DimensionMismatch, "embedding does not match form dimensions");
  return DiscreteForm(test_embedding.transpose() * matrix_ * trial_embedding,
                      gram_trial_.restricted(trial_embedding),
                      gram_test_.restricted(test_embedding));
}

Matrix DiscreteForm::normalized_matrix() const {
  const Matrix left = gram_test_.factor().triangularView<Eigen::Lower>().solve(matrix_);
  // (L_trial^{-1} left^T)^T = left L_trial^{-T}
  return gram_trial_.factor().triangularView<Eigen::Lower>().solve(left.transpose()).transpose();
}

double DiscreteForm::evaluate(const Vector& u, const Vector& v) const {
  INFSUP_THROW_IF(u.size() != trial_dim() || v.size() != test_dim(), ErrorCode::DimensionMismatch,
                  "argument sizes do not match form");
  return v.dot(matrix_ * u);
}

NormalizedSpectrum normalized_spectrum(const DiscreteForm& form) {
  return NormalizedSpectrum(singular_values_of(form.normalized_matrix()), form.trial_dim(),
                            form.test_dim());
}

Vector best_approximation_coefficients(const Vector& w, const Matrix& sub, const GramMatrix& g) {
  INFSUP_THROW_IF(sub.rows() != g.dim() || w.size() != g.dim(), ErrorCode::DimensionMismatch,
                  "subspace basis and vector must live in the Gram's space");
  if (sub.cols() == 0) {
    return Vector(0);
  }
  const Matrix y = g.to_euclidean(sub);
  Eigen::ColPivHouseholderQR<Matrix> qr(y);
  qr.setThreshold(1e-12);
  INFSUP_THROW_IF(qr.rank() < sub.cols(), ErrorCode::RankDeficientSubspace,
                  "subspace basis has rank " + std::to_string(qr.rank()) + " < " +
                      std::to_string(sub.cols()));
  return qr.solve(g.to_euclidean(w));
}

double best_approximation_distance(const Vector& w, const Matrix& sub, const GramMatrix& g) {
  const Vector c = best_approximation_coefficients(w, sub, g);
  if (c.size() == 0) {
    return gram_norm(w, g);
  }
  return gram_norm(w - sub * c, g);
}

ExtremeSingularValues extreme_singular_values(const SparseMatrix& a, const SparseMatrix& gram_trial,
                                              const SparseMatrix& gram_test,
                                              const IterationControl& control) {
  INFSUP_THROW_IF(a.rows() != a.cols(), ErrorCode::DimensionMismatch,
                  "extreme singular values require a square form");
  if (a.rows() <= kDenseDimensionGuard) {
    const DiscreteForm form{Matrix(a), GramMatrix{Matrix(gram_trial)}, GramMatrix{Matrix(gram_test)}};
    const NormalizedSpectrum spectrum = normalized_spectrum(form);
    return {spectrum.inf_sup(), spectrum.continuity(), 0, true};
  }
  return extreme_singular_values_iterative(a, gram_trial, gram_test, control);
}

ExtremeSingularValues extreme_singular_values_iterative(const SparseMatrix& a,
                                                        const SparseMatrix& gram_trial,
                                                        const SparseMatrix& gram_test,
                                                        const IterationControl& control) {
  const Index n = a.rows();
  INFSUP_THROW_IF(a.cols() != n || gram_trial.rows() != n || gram_test.rows() != n,
                  ErrorCode::DimensionMismatch, "iterative path requires matching square inputs");

  Eigen::SimplicialLLT<SparseMatrix> trial_solver(gram_trial);
  Eigen::SimplicialLLT<SparseMatrix> test_solver(gram_test);
  INFSUP_THROW_IF(trial_solver.info() != Eigen::Success || test_solver.info() != Eigen::Success,
                  ErrorCode::NotSPD, "sparse Gram factorization failed");

  Vector start(n);
  for (Index i = 0; i < n; ++i) {
    start[i] = 1.0 + static_cast<double>(i % 7) / 13.0;
  }

  ExtremeSingularValues out;

  // Largest: power iteration on G_trial^{-1} A^T G_test^{-1} A, Rayleigh quotient in G_trial.
  {
    Vector x = start / std::sqrt(start.dot(gram_trial * start));
    double previous = 0.0;
    bool done = false;
    for (int it = 1; it <= control.max_iterations && !done; ++it) {
      const Vector ax = a * x;
      const Vector z = test_solver.solve(ax);
      const double rayleigh = ax.dot(z);  // x^T A^T G_test^{-1} A x with ||x||_{G_trial} = 1
      const Vector y = trial_solver.solve(Vector(a.transpose() * z));
      const double norm = std::sqrt(y.dot(gram_trial * y));
      if (norm == 0.0) {
        out.largest = 0.0;
        done = true;
        break;
      }
      x = y / norm;
      out.largest = std::sqrt(std::max(rayleigh, 0.0));
      out.iterations = it;
      if (it > 1 && std::abs(rayleigh - previous) <= control.relative_tolerance * rayleigh) {
        done = true;
      }
      previous = rayleigh;
    }
    out.converged = done;
  }

  // Smallest: inverse power iteration with A^{-1} G_test A^{-T} G_trial.
  Eigen::SparseLU<SparseMatrix> lu(a);
  if (lu.info() != Eigen::Success) {
    out.smallest = 0.0;
    return out;
  }
  SparseMatrix at = a.transpose();
  Eigen::SparseLU<SparseMatrix> lu_t(at);
  if (lu_t.info() != Eigen::Success) {
    out.smallest = 0.0;
    return out;
  }
  Vector x = start / std::sqrt(start.dot(gram_trial * start));
  double previous = 0.0;
  bool done = false;
  int iterations = 0;
  for (int it = 1; it <= control.max_iterations && !done; ++it) {
    const Vector gx = gram_trial * x;
    const Vector w = lu_t.solve(gx);
    const Vector y = lu.solve(Vector(gram_test * w));
    const double rayleigh = gx.dot(y);  // x^T G_trial T^{-1} x, eigenvalue 1/sigma^2
    const double norm = std::sqrt(y.dot(gram_trial * y));
    x = y / norm;
    iterations = it;
    out.smallest = rayleigh > 0.0 ? 1.0 / std::sqrt(rayleigh) : 0.0;
    if (it > 1 && std::abs(rayleigh - previous) <= control.relative_tolerance * rayleigh) {
      done = true;
    }
    previous = rayleigh;
  }
  out.iterations = std::max(out.iterations, iterations);
  out.converged = out.converged && done;
  return out;
}

}  // namespace infsup
