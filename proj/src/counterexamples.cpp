#include "infsup/counterexamples.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "infsup/random.hpp"

namespace infsup::counterexamples {

DiscreteForm alternating_form(Index size) {
  INFSUP_THROW_IF(size < 2 || size % 2 != 0, ErrorCode::SizeTooSmall,
                  "alternating form needs an even size >= 2, got " + std::to_string(size));
  Matrix a = Matrix::Zero(size, size);
  for (Index k = 0; k < size; ++k) {
    a(k, k) = k % 2 == 0 ? 1.0 : -1.0;
  }
  return DiscreteForm::euclidean(std::move(a));
}

Vector pair_vector(Index n, Index size) {
  INFSUP_THROW_IF(n < 0 || 2 * n + 1 >= size, ErrorCode::IndexOutOfRange,
                  "pair vector " + std::to_string(n) + " needs size > " + std::to_string(2 * n + 1));
  Vector f = Vector::Zero(size);
  f(2 * n) = 1.0;
  f(2 * n + 1) = 1.0;
  return f;
}

NestedSpaceFamily adversarial_family(int levels, Index size) {
  INFSUP_THROW_IF(levels < 1, ErrorCode::InvalidFamily, "need at least one level");
  INFSUP_THROW_IF(size < 2 * levels + 2, ErrorCode::SizeTooSmall,
                  "adversarial family with " + std::to_string(levels) + " levels needs size >= " +
                      std::to_string(2 * levels + 2));
  std::vector<SpaceLevel> out;
  for (int n = 1; n <= levels; ++n) {
    Matrix e = Matrix::Zero(size, n + 1);
    e.leftCols(n) = Matrix::Identity(size, n);
    e.col(n) = pair_vector(n, size) / std::sqrt(2.0);
    out.push_back({e, e});
  }
  return NestedSpaceFamily(GramMatrix::identity(size), GramMatrix::identity(size), std::move(out),
                           false);
}

NestedSpaceFamily coordinate_family(int levels, Index size) {
  INFSUP_THROW_IF(levels < 1 || size < levels + 1, ErrorCode::SizeTooSmall,
                  "coordinate family does not fit the truncation");
  std::vector<Index> dims;
  for (int n = 1; n <= levels; ++n) dims.push_back(n + 1);
  return NestedSpaceFamily::coordinate(GramMatrix::identity(size), GramMatrix::identity(size), dims);
}

NestedSpaceFamily random_nested_family(int levels, Index size, std::uint64_t seed) {
  INFSUP_THROW_IF(levels < 1 || size < levels + 1, ErrorCode::SizeTooSmall,
                  "random family does not fit the truncation");
  Rng rng(seed);
  const Matrix q = rng.orthogonal(size);
  std::vector<SpaceLevel> out;
  for (int n = 1; n <= levels; ++n) {
    out.push_back({q.leftCols(n + 1), q.leftCols(n + 1)});
  }
  return NestedSpaceFamily(GramMatrix::identity(size), GramMatrix::identity(size), std::move(out),
                           true);
}

std::vector<UnboundedRow> unbounded_discrete_solutions(int levels, double rate) {
  INFSUP_THROW_IF(levels < 1, ErrorCode::InvalidFamily, "need at least one level");
  INFSUP_THROW_IF(!(rate >= 1.0), ErrorCode::InvalidFamily, "rate must be >= 1");
  const Index size = 2 * levels + 2;
  // f_bar = sum_j 2^{-j} u_j, u_j = f_j / sqrt(2).
  Vector f_bar = Vector::Zero(size);
  for (int j = 1; j <= levels; ++j) {
    f_bar += std::ldexp(1.0, -j) * pair_vector(j, size) / std::sqrt(2.0);
  }
  const DiscreteForm ambient = alternating_form(size);
  const NestedSpaceFamily adversarial = adversarial_family(levels, size);
  const NestedSpaceFamily coordinate = coordinate_family(levels, size);
  std::vector<UnboundedRow> rows;
  for (int n = 1; n <= levels; ++n) {
    const auto idx = static_cast<std::size_t>(n - 1);
    const SpaceLevel& lv = adversarial.level(idx);
    Matrix a = adversarial.restrict_form(ambient, idx).matrix();
    UnboundedRow row;
    row.n = n;
    row.epsilon = std::pow(rate, -n);
    a(n, n) = row.epsilon;
    const DiscreteForm level = DiscreteForm::euclidean(a);
    row.beta_tilde = normalized_spectrum(level).inf_sup();
    row.beta = normalized_spectrum(coordinate.restrict_form(ambient, idx)).inf_sup();
    const Vector coeffs = solve_level(level, lv.test.transpose() * f_bar);
    row.solution_norm = gram_norm(lv.trial * coeffs, GramMatrix::identity(size));
    row.growth = rows.empty() ? 0.0 : row.solution_norm / rows.back().solution_norm;
    rows.push_back(row);
  }
  return rows;
}

std::optional<Vector> isotropic_witness(const DiscreteForm& form, const Matrix& sub) {
  INFSUP_THROW_IF(!form.is_square(), ErrorCode::DimensionMismatch, "witness needs a square form");
  const GramMatrix& g = form.gram_trial();
  const Index n = g.dim();
  // Euclidean orthonormal basis of the complement of L^T range(sub).
  Matrix complement;
  if (sub.cols() == 0) {
    complement = Matrix::Identity(n, n);
  } else {
    Eigen::HouseholderQR<Matrix> qr(g.to_euclidean(sub));
    const Matrix q = qr.householderQ();
    complement = q.rightCols(n - sub.cols());
  }
  if (complement.cols() < 2) return std::nullopt;
  const Matrix b = form.normalized_matrix();
  const Matrix s = complement.transpose() * (0.5 * (b + b.transpose())) * complement;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const double lo = es.eigenvalues()(0);
  const double hi = es.eigenvalues()(s.rows() - 1);
  if (!(lo < 0.0 && hi > 0.0)) return std::nullopt;
  const double t = std::atan(std::sqrt(-lo / hi));
  const Vector y = complement * (std::cos(t) * es.eigenvectors().col(0) +
                                 std::sin(t) * es.eigenvectors().col(s.rows() - 1));
  return g.from_euclidean(y);
}

NestedSpaceFamily witness_family(const DiscreteForm& form, int levels) {
  const Index size = form.trial_dim();
  INFSUP_THROW_IF(levels < 1 || size < 2 * levels + 2, ErrorCode::SizeTooSmall,
                  "witness family does not fit the truncation");
  std::vector<SpaceLevel> out;
  for (int n = 1; n <= levels; ++n) {
    Matrix e = Matrix::Zero(size, n + 1);
    e.leftCols(n) = Matrix::Identity(size, n);
    const auto u = isotropic_witness(form, Matrix::Identity(size, 2 * n));
    e.col(n) = u ? *u : Vector(Vector::Unit(size, n));
    out.push_back({e, e});
  }
  return NestedSpaceFamily(form.gram_trial(), form.gram_test(), std::move(out), false);
}

}  // namespace infsup::counterexamples
