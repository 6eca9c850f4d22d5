#include "infsup/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace infsup {

namespace {

constexpr double kQuasiOptimalitySlack = 1e-8;
constexpr double kProjectionTolerance = 1e-10;

void require_full_rank(const Matrix& e, const GramMatrix& g, const std::string& what) {
  INFSUP_THROW_IF(e.rows() != g.dim(), ErrorCode::DimensionMismatch,
                  what + " embedding has " + std::to_string(e.rows()) + " rows, ambient is " +
                      std::to_string(g.dim()));
  Eigen::ColPivHouseholderQR<Matrix> qr(g.to_euclidean(e));
  qr.setThreshold(1e-12);
  INFSUP_THROW_IF(qr.rank() < e.cols(), ErrorCode::RankDeficientSubspace,
                  what + " embedding is rank deficient");
}

bool contained_in(const Matrix& inner, const Matrix& outer, const GramMatrix& g) {
  for (Index j = 0; j < inner.cols(); ++j) {
    const Vector col = inner.col(j);
    const double scale = std::max(gram_norm(col, g), std::numeric_limits<double>::min());
    if (best_approximation_distance(col, outer, g) > 1e-10 * scale) {
      return false;
    }
  }
  return true;
}

double functional_norm(const Vector& r, const GramMatrix& g) {
  return g.factor().triangularView<Eigen::Lower>().solve(r).norm();
}

}  // namespace

NestedSpaceFamily::NestedSpaceFamily(GramMatrix gram_trial, GramMatrix gram_test,
                                     std::vector<SpaceLevel> levels, bool nested)
    : gram_trial_(std::move(gram_trial)),
      gram_test_(std::move(gram_test)),
      levels_(std::move(levels)),
      nested_(nested) {
  INFSUP_THROW_IF(levels_.empty(), ErrorCode::InvalidFamily, "family has no levels");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    const auto& lv = levels_[n];
    const std::string tag = "level " + std::to_string(n);
    INFSUP_THROW_IF(lv.trial.cols() == 0, ErrorCode::InvalidFamily, tag + " is empty");
    INFSUP_THROW_IF(lv.trial.cols() != lv.test.cols(), ErrorCode::InvalidFamily,
                    tag + ": dim U_n != dim V_n");
    require_full_rank(lv.trial, gram_trial_, tag + " trial");
    require_full_rank(lv.test, gram_test_, tag + " test");
    if (n > 0) {
      INFSUP_THROW_IF(lv.trial.cols() <= levels_[n - 1].trial.cols(), ErrorCode::InvalidFamily,
                      tag + ": dimensions must increase strictly");
      if (nested_) {
        INFSUP_THROW_IF(!contained_in(levels_[n - 1].trial, lv.trial, gram_trial_) ||
                            !contained_in(levels_[n - 1].test, lv.test, gram_test_),
                        ErrorCode::InvalidFamily, tag + " does not contain the previous level");
      }
    }
  }
}

NestedSpaceFamily NestedSpaceFamily::coordinate(GramMatrix gram_trial, GramMatrix gram_test,
                                                const std::vector<Index>& dims) {
  std::vector<SpaceLevel> levels;
  levels.reserve(dims.size());
  for (const Index d : dims) {
    INFSUP_THROW_IF(d < 1 || d > gram_trial.dim() || d > gram_test.dim(), ErrorCode::InvalidFamily,
                    "coordinate level dimension " + std::to_string(d) + " out of range");
    levels.push_back({Matrix::Identity(gram_trial.dim(), d), Matrix::Identity(gram_test.dim(), d)});
  }
  return NestedSpaceFamily(std::move(gram_trial), std::move(gram_test), std::move(levels), true);
}

const SpaceLevel& NestedSpaceFamily::level(std::size_t n) const {
  INFSUP_THROW_IF(n >= levels_.size(), ErrorCode::IndexOutOfRange,
                  "level " + std::to_string(n) + " of " + std::to_string(levels_.size()));
  return levels_[n];
}

DiscreteForm NestedSpaceFamily::restrict_form(const DiscreteForm& ambient, std::size_t n) const {
  INFSUP_THROW_IF(ambient.trial_dim() != gram_trial_.dim() ||
                      ambient.test_dim() != gram_test_.dim(),
                  ErrorCode::DimensionMismatch, "ambient form does not match family");
  const auto& lv = level(n);
  return ambient.restricted(lv.trial, lv.test);
}

Vector solve_level(const DiscreteForm& form, const Vector& rhs) {
  INFSUP_THROW_IF(!form.is_square(), ErrorCode::DimensionMismatch,
                  "discrete problem must be square");
  INFSUP_THROW_IF(rhs.size() != form.test_dim(), ErrorCode::DimensionMismatch,
                  "rhs has size " + std::to_string(rhs.size()) + ", expected " +
                      std::to_string(form.test_dim()));
  const double beta = normalized_spectrum(form).inf_sup();
  INFSUP_THROW_IF(beta < kSingularityThreshold, ErrorCode::SingularDiscreteProblem,
                  "smallest normalized singular value " + std::to_string(beta));
  return form.matrix().fullPivLu().solve(rhs);
}

Vector ritz_projection(const NestedSpaceFamily& family, const DiscreteForm& ambient, std::size_t n,
                       const Vector& w) {
  INFSUP_THROW_IF(w.size() != ambient.trial_dim(), ErrorCode::DimensionMismatch,
                  "w must be an ambient trial vector");
  const auto& lv = family.level(n);
  const DiscreteForm level_form = family.restrict_form(ambient, n);
  const Vector rhs = lv.test.transpose() * (ambient.matrix() * w);
  return lv.trial * solve_level(level_form, rhs);
}

Matrix ritz_projector(const NestedSpaceFamily& family, const DiscreteForm& ambient, std::size_t n) {
  const auto& lv = family.level(n);
  const DiscreteForm level_form = family.restrict_form(ambient, n);
  const double beta = normalized_spectrum(level_form).inf_sup();
  INFSUP_THROW_IF(beta < kSingularityThreshold, ErrorCode::SingularDiscreteProblem,
                  "level " + std::to_string(n) + " is singular");
  const Matrix rhs = lv.test.transpose() * ambient.matrix();
  return lv.trial * level_form.matrix().fullPivLu().solve(rhs);
}

ProjectionNorms projection_norms(const Matrix& q, const GramMatrix& g) {
  INFSUP_THROW_IF(q.rows() != g.dim() || q.cols() != g.dim(), ErrorCode::DimensionMismatch,
                  "projection and Gram dimensions differ");
  const Matrix id = Matrix::Identity(q.rows(), q.cols());
  const double scale = std::max(1.0, q.norm());
  INFSUP_THROW_IF((q * q - q).norm() > kProjectionTolerance * scale, ErrorCode::NotAProjection,
                  "Q^2 != Q");
  INFSUP_THROW_IF(q.norm() <= 1e-14 * std::sqrt(static_cast<double>(q.rows())),
                  ErrorCode::TrivialProjection, "Q = 0");
  INFSUP_THROW_IF((q - id).norm() <= 1e-14 * scale, ErrorCode::TrivialProjection, "Q = Id");

  // ||Q||_G = ||L^T Q L^{-T}||_2
  auto g_norm = [&g](const Matrix& m) {
    const Matrix right = g.factor().triangularView<Eigen::Lower>().solve(m.transpose()).transpose();
    const Matrix conj = g.to_euclidean(right);
    Eigen::JacobiSVD<Matrix> svd(conj);
    return svd.singularValues()(0);
  };
  return {g_norm(q), g_norm(id - q)};
}

BnbScan bnb_scan(const NestedSpaceFamily& family, const DiscreteForm& ambient) {
  BnbScan scan;
  scan.inf_beta = std::numeric_limits<double>::infinity();
  scan.inf_beta_star = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < family.size(); ++n) {
    const DiscreteForm f = family.restrict_form(ambient, n);
    const NormalizedSpectrum s = normalized_spectrum(f);
    const NormalizedSpectrum s_star = normalized_spectrum(f.adjoint());
    LevelStability lv{n, family.dim(n), s.inf_sup(), s_star.inf_sup(), s.continuity()};
    scan.inf_beta = std::min(scan.inf_beta, lv.beta);
    scan.inf_beta_star = std::min(scan.inf_beta_star, lv.beta_star);
    scan.levels.push_back(lv);
  }
  return scan;
}

bool QuasiOptimalityReport::all_passed() const {
  return std::all_of(runs.begin(), runs.end(),
                     [](const GalerkinRun& r) { return r.quasi_optimal && r.apriori_holds; });
}

QuasiOptimalityReport quasi_optimality_check(const NestedSpaceFamily& family,
                                             const DiscreteForm& ambient, const Vector& exact,
                                             const Vector& rhs) {
  INFSUP_THROW_IF(exact.size() != ambient.trial_dim() || rhs.size() != ambient.test_dim(),
                  ErrorCode::DimensionMismatch, "exact solution / rhs do not match ambient form");
  QuasiOptimalityReport report;
  const double rhs_scale = std::max(rhs.norm(), std::numeric_limits<double>::min());
  report.ambient_residual = (ambient.matrix() * exact - rhs).norm() / rhs_scale;

  const GramMatrix& g_trial = family.gram_trial();
  const double exact_norm = gram_norm(exact, g_trial);

  for (std::size_t n = 0; n < family.size(); ++n) {
    const auto& lv = family.level(n);
    const DiscreteForm level_form = family.restrict_form(ambient, n);
    const Vector level_rhs = lv.test.transpose() * rhs;
    const Vector coeffs = solve_level(level_form, level_rhs);

    GalerkinRun run;
    run.level = n;
    run.dim = family.dim(n);
    run.solution = lv.trial * coeffs;

    const NormalizedSpectrum s = normalized_spectrum(level_form);
    run.beta = s.inf_sup();
    run.continuity = s.continuity();
    run.beta_star = normalized_spectrum(level_form.adjoint()).inf_sup();
    const GramMatrix level_test_gram = family.gram_test().restricted(lv.test);
    run.continuity_ambient =
        normalized_spectrum(DiscreteForm(lv.test.transpose() * ambient.matrix(), g_trial,
                                         level_test_gram))
            .continuity();

    const Vector err = exact - run.solution;
    run.orthogonality_residual = (lv.test.transpose() * (ambient.matrix() * err)).cwiseAbs().maxCoeff();
    run.error = gram_norm(err, g_trial);
    run.distance = best_approximation_distance(exact, lv.trial, g_trial);
    const double floor = 1e-12 * std::max(exact_norm, 1e-300);
    run.ratio = run.distance > floor ? run.error / run.distance : 0.0;
    run.quasi_optimality_bound = run.continuity_ambient / run.beta;
    run.quasi_optimal =
        run.error <= run.quasi_optimality_bound * run.distance * (1.0 + kQuasiOptimalitySlack) + floor;

    run.solution_norm = gram_norm(run.solution, g_trial);
    run.data_norm = functional_norm(level_rhs, level_test_gram);
    run.apriori_bound = run.data_norm / run.beta;
    run.apriori_holds = run.solution_norm <= run.apriori_bound * (1.0 + kQuasiOptimalitySlack) +
                                                 1e-14 * std::max(exact_norm, 1.0);
    report.runs.push_back(std::move(run));
  }
  return report;
}

}  // namespace infsup
