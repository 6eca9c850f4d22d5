#include "infsup/random.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>

namespace infsup {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

Vector Rng::normal_vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = normal();
  }
  return v;
}

Matrix Rng::normal_matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      m(i, j) = normal();
    }
  }
  return m;
}

Matrix Rng::orthogonal(Index n) {
  Eigen::HouseholderQR<Matrix> qr(normal_matrix(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

Matrix Rng::spd(Index n, double max_condition) {
  const Matrix q = orthogonal(n);
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::exp(uniform() * std::log(max_condition));
  }
  Matrix g = q * d.asDiagonal() * q.transpose();
  return 0.5 * (g + g.transpose());
}

Matrix Rng::invertible(Index n, double max_condition) {
  const Matrix u = orthogonal(n);
  const Matrix v = orthogonal(n);
  Vector d(n);
  for (Index i = 0; i < n; ++i) {
    d(i) = std::exp(uniform() * std::log(max_condition));
  }
  return u * d.asDiagonal() * v.transpose();
}

Vector Rng::unit_vector(const GramMatrix& g) {
  const Vector v = normal_vector(g.dim());
  return v / gram_norm(v, g);
}

}  // namespace infsup
