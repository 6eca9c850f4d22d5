#include "infsup/saddle.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infsup/galerkin.hpp"

namespace infsup::saddle {

namespace {

double max_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double min_singular_value_square(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

/// L_Y^{-1} B L_W^{-T}
Matrix normalized_constraint(const SaddleSystem& sys) {
  const Matrix left = sys.gram_y().factor().triangularView<Eigen::Lower>().solve(sys.b_hat());
  return sys.gram_w().factor().triangularView<Eigen::Lower>().solve(left.transpose()).transpose();
}

Matrix normalized_principal(const SaddleSystem& sys) {
  const Matrix& l = sys.gram_w().factor();
  const Matrix left = l.triangularView<Eigen::Lower>().solve(sys.a_hat());
  return l.triangularView<Eigen::Lower>().solve(left.transpose()).transpose();
}

}  // namespace

SaddleSystem::SaddleSystem(Matrix a_hat, Matrix b_hat, GramMatrix gram_w, GramMatrix gram_y)
    : a_hat_(std::move(a_hat)),
      b_hat_(std::move(b_hat)),
      gram_w_(std::move(gram_w)),
      gram_y_(std::move(gram_y)) {
  INFSUP_THROW_IF(a_hat_.rows() == 0 || a_hat_.rows() != a_hat_.cols(), ErrorCode::DimensionMismatch,
                  "a_hat must be square and non-empty");
  INFSUP_THROW_IF(b_hat_.rows() == 0, ErrorCode::ZeroPressureSpace, "pressure space is empty");
  INFSUP_THROW_IF(b_hat_.cols() != a_hat_.rows(), ErrorCode::DimensionMismatch,
                  "b_hat has " + std::to_string(b_hat_.cols()) + " columns, W has dimension " +
                      std::to_string(a_hat_.rows()));
  INFSUP_THROW_IF(gram_w_.dim() != a_hat_.rows() || gram_y_.dim() != b_hat_.rows(),
                  ErrorCode::DimensionMismatch, "Gram dimensions do not match the blocks");
}

SaddleSystem SaddleSystem::euclidean(Matrix a_hat, Matrix b_hat) {
  const Index nw = a_hat.rows();
  const Index ny = b_hat.rows();
  INFSUP_THROW_IF(ny == 0, ErrorCode::ZeroPressureSpace, "pressure space is empty");
  return SaddleSystem(std::move(a_hat), std::move(b_hat), GramMatrix::identity(nw),
                      GramMatrix::identity(ny));
}

double SaddleSystem::continuity() const {
  return std::max(max_singular_value(normalized_principal(*this)),
                  max_singular_value(normalized_constraint(*this)));
}

SaddleSystem SaddleSystem::with_scaled_constraint(double t) const {
  return SaddleSystem(a_hat_, t * b_hat_, gram_w_, gram_y_);
}

DiscreteForm block_embed(const SaddleSystem& sys) {
  const Index nw = sys.w_dim();
  const Index ny = sys.y_dim();
  Matrix block = Matrix::Zero(nw + ny, nw + ny);
  block.topLeftCorner(nw, nw) = sys.a_hat();
  block.topRightCorner(nw, ny) = sys.b_hat().transpose();
  block.bottomLeftCorner(ny, nw) = sys.b_hat();
  const GramMatrix g = GramMatrix::block_diagonal(sys.gram_w(), sys.gram_y());
  return DiscreteForm(std::move(block), g, g);
}

BrezziConstants brezzi_constants(const SaddleSystem& sys) {
  const Index nw = sys.w_dim();
  const Index ny = sys.y_dim();
  const Matrix b = normalized_constraint(sys);
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullV);
  const Vector sv = svd.singularValues();
  BrezziConstants out;
  out.beta_iii = ny <= nw ? sv(ny - 1) : 0.0;

  const double cutoff = kKernelRankTolerance * (sv.size() ? sv(0) : 0.0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  out.kernel_dim = nw - rank;
  if (out.kernel_dim == 0) {
    out.empty_kernel = true;
    out.beta_i = out.beta_ii = std::numeric_limits<double>::infinity();
    out.kernel_basis = Matrix(nw, 0);
    return out;
  }
  const Matrix kernel = svd.matrixV().rightCols(out.kernel_dim);  // Euclidean, orthonormal
  out.kernel_basis = sys.gram_w().from_euclidean(kernel);
  const Matrix restricted = kernel.transpose() * normalized_principal(sys) * kernel;
  out.beta_i = min_singular_value_square(restricted);
  out.beta_ii = min_singular_value_square(restricted.transpose());
  return out;
}

MixedSolution mixed_solve(const SaddleSystem& sys, const Vector& f, const Vector& g) {
  INFSUP_THROW_IF(f.size() != sys.w_dim() || g.size() != sys.y_dim(), ErrorCode::DimensionMismatch,
                  "data sizes do not match the saddle system");
  Vector rhs(f.size() + g.size());
  rhs << f, g;
  const Vector u = solve_level(block_embed(sys), rhs);
  MixedSolution out;
  out.w = u.head(sys.w_dim());
  out.p = u.tail(sys.y_dim());
  const Vector rm = sys.a_hat() * out.w + sys.b_hat().transpose() * out.p - f;
  const Vector rc = sys.b_hat() * out.w - g;
  out.residual_momentum = rm.cwiseAbs().maxCoeff();
  out.residual_constraint = rc.cwiseAbs().maxCoeff();
  out.scale = std::max(sys.a_hat().cwiseAbs().maxCoeff(), sys.b_hat().cwiseAbs().maxCoeff()) *
                  (out.w.cwiseAbs().maxCoeff() + out.p.cwiseAbs().maxCoeff()) +
              f.cwiseAbs().maxCoeff() + g.cwiseAbs().maxCoeff();
  return out;
}

EquivalenceReport brezzi_bnb_equivalence(const SaddleSystem& sys) {
  EquivalenceReport r;
  r.brezzi = brezzi_constants(sys);
  r.global_beta = normalized_spectrum(block_embed(sys)).inf_sup();
  r.brezzi_holds = std::min(r.brezzi.beta_i, r.brezzi.beta_iii) > kEquivalenceTolerance;
  r.bnb_holds = r.global_beta > kEquivalenceTolerance;
  return r;
}

namespace {

SaddleSystem stable_level(int n) {
  const Index nw = 2 * n;
  Matrix a = Matrix::Identity(nw, nw);
  Matrix b = Matrix::Zero(n, nw);
  for (Index k = 0; k < n; ++k) {
    b(k, 2 * k) = 1.0;
    a(2 * k, 2 * k + 1) = 0.5;
    if (2 * k + 2 < nw) {
      a(2 * k + 2, 2 * k + 1) = 0.5;
    }
  }
  return SaddleSystem::euclidean(std::move(a), std::move(b));
}

SaddleSystem unstable_level(int n) {
  const SaddleSystem base = stable_level(n + 1);
  Matrix b(base.y_dim() + 1, base.w_dim());
  b.topRows(base.y_dim()) = base.b_hat();
  b.bottomRows(1).setZero();
  b(base.y_dim(), 2 * n + 1) = std::ldexp(1.0, -n);
  return SaddleSystem::euclidean(base.a_hat(), std::move(b));
}

SaddleSystem fourier_stokes_level(int n) {
  std::vector<std::pair<int, int>> modes;
  for (int k1 = -n; k1 <= n; ++k1) {
    for (int k2 = -n; k2 <= n; ++k2) {
      if (k1 != 0 || k2 != 0) modes.emplace_back(k1, k2);
    }
  }
  const Index m = static_cast<Index>(modes.size());
  Matrix a = Matrix::Zero(2 * m, 2 * m);
  Matrix b = Matrix::Zero(m, 2 * m);
  Vector gw(2 * m);
  for (Index i = 0; i < m; ++i) {
    const double k1 = modes[static_cast<std::size_t>(i)].first;
    const double k2 = modes[static_cast<std::size_t>(i)].second;
    const double k_sq = k1 * k1 + k2 * k2;
    a(2 * i, 2 * i) = a(2 * i + 1, 2 * i + 1) = k_sq;
    gw(2 * i) = gw(2 * i + 1) = 1.0 + k_sq;
    b(i, 2 * i) = k1;
    b(i, 2 * i + 1) = k2;
  }
  return SaddleSystem(std::move(a), std::move(b), GramMatrix(gw.asDiagonal().toDenseMatrix()),
                      GramMatrix::identity(m));
}

}  // namespace

SaddleSystem family_level(Family family, int n) {
  INFSUP_THROW_IF(n < 1, ErrorCode::IndexOutOfRange, "family level must be >= 1");
  switch (family) {
    case Family::Stable: return stable_level(n);
    case Family::Unstable: return unstable_level(n);
    case Family::FourierStokes: return fourier_stokes_level(n);
  }
  throw Error(ErrorCode::InvalidFamily, "unknown family");
}

std::vector<RefinementLevel> refinement_study(const SaddleSystem& finest,
                                              const std::vector<std::pair<Index, Index>>& dims,
                                              const Vector& f, const Vector& g) {
  const MixedSolution ref = mixed_solve(finest, f, g);
  std::vector<RefinementLevel> out;
  for (const auto& [nw, ny] : dims) {
    INFSUP_THROW_IF(nw < 1 || ny < 1 || nw > finest.w_dim() || ny > finest.y_dim(),
                    ErrorCode::InvalidFamily, "refinement level outside the finest system");
    const SaddleSystem level(
        finest.a_hat().topLeftCorner(nw, nw), finest.b_hat().topLeftCorner(ny, nw),
        GramMatrix(finest.gram_w().entries().topLeftCorner(nw, nw)),
        GramMatrix(finest.gram_y().entries().topLeftCorner(ny, ny)));
    const MixedSolution sol = mixed_solve(level, f.head(nw), g.head(ny));
    Vector ew = ref.w;
    ew.head(nw) -= sol.w;
    Vector ep = ref.p;
    ep.head(ny) -= sol.p;
    RefinementLevel r;
    r.w_dim = nw;
    r.y_dim = ny;
    const double ew_n = gram_norm(ew, finest.gram_w());
    const double ep_n = gram_norm(ep, finest.gram_y());
    r.error = std::sqrt(ew_n * ew_n + ep_n * ep_n);
    r.distance = best_approximation_distance(ref.w, Matrix::Identity(finest.w_dim(), nw), finest.gram_w()) +
                 best_approximation_distance(ref.p, Matrix::Identity(finest.y_dim(), ny), finest.gram_y());
    const double floor = 1e-12 * (gram_norm(ref.w, finest.gram_w()) + gram_norm(ref.p, finest.gram_y()));
    r.constant = r.distance > floor ? r.error / r.distance : 0.0;
    out.push_back(r);
  }
  return out;
}

}  // namespace infsup::saddle
