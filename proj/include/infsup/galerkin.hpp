#pragma once

// Galerkin solves on families of finite-dimensional trial/test subspaces of a
// finite ambient space, Ritz projections, and per-level stability scans.

#include <cstddef>
#include <vector>

#include "infsup/linalg.hpp"

namespace infsup {

/// Trial and test subspaces of one level, as ambient-coordinate embeddings.
struct SpaceLevel {
  Matrix trial;  ///< N_trial x d, full column rank
  Matrix test;   ///< N_test x d, full column rank
};

/// Sequence of levels n -> (U_n, V_n) inside a finite ambient truncation.
/// Levels have equal trial/test dimension and strictly increasing dimension.
/// When `nested` is set, range(E_n) must be contained in range(E_{n+1}).
class NestedSpaceFamily {
 public:
  NestedSpaceFamily(GramMatrix gram_trial, GramMatrix gram_test, std::vector<SpaceLevel> levels,
                    bool nested);

  /// Coordinate spans {e_0, ..., e_{d-1}} on both sides, one level per entry of `dims`.
  static NestedSpaceFamily coordinate(GramMatrix gram_trial, GramMatrix gram_test,
                                      const std::vector<Index>& dims);

  [[nodiscard]] std::size_t size() const noexcept { return levels_.size(); }
  [[nodiscard]] const SpaceLevel& level(std::size_t n) const;
  [[nodiscard]] Index dim(std::size_t n) const { return level(n).trial.cols(); }
  [[nodiscard]] bool nested() const noexcept { return nested_; }
  [[nodiscard]] const GramMatrix& gram_trial() const noexcept { return gram_trial_; }
  [[nodiscard]] const GramMatrix& gram_test() const noexcept { return gram_test_; }

  /// Ambient form restricted to level n.
  [[nodiscard]] DiscreteForm restrict_form(const DiscreteForm& ambient, std::size_t n) const;

 private:
  GramMatrix gram_trial_;
  GramMatrix gram_test_;
  std::vector<SpaceLevel> levels_;
  bool nested_;
};

/// Coefficients of u_n with A u_n = rhs. Throws SingularDiscreteProblem when the
/// smallest normalized singular value is below kSingularityThreshold.
Vector solve_level(const DiscreteForm& form, const Vector& rhs);

/// Q_n w: the element of U_n with a(Q_n w, chi) = a(w, chi) for chi in V_n.
Vector ritz_projection(const NestedSpaceFamily& family, const DiscreteForm& ambient, std::size_t n,
                       const Vector& w);

/// Ambient matrix of Q_n.
Matrix ritz_projector(const NestedSpaceFamily& family, const DiscreteForm& ambient, std::size_t n);

struct ProjectionNorms {
  double projection = 0.0;  ///< ||Q||_G
  double complement = 0.0;  ///< ||I - Q||_G
};

/// Operator norms of a non-trivial projection and its complement in the G-norm.
/// Throws NotAProjection if Q^2 != Q (1e-10 relative), TrivialProjection for Q = 0 or Id.
ProjectionNorms projection_norms(const Matrix& q, const GramMatrix& g);

struct LevelStability {
  std::size_t level = 0;
  Index dim = 0;
  double beta = 0.0;        ///< inf-sup of a on U_n x V_n
  double beta_star = 0.0;   ///< inf-sup of the adjoint on V_n x U_n
  double continuity = 0.0;  ///< M_n, largest normalized singular value
};

struct BnbScan {
  std::vector<LevelStability> levels;
  double inf_beta = 0.0;
  double inf_beta_star = 0.0;
};

BnbScan bnb_scan(const NestedSpaceFamily& family, const DiscreteForm& ambient);

struct GalerkinRun {
  std::size_t level = 0;
  Index dim = 0;
  Vector solution;  ///< u_n in ambient trial coordinates
  /// max_i |a(u - u_n, chi_i)| over the test basis of level n.
  double orthogonality_residual = 0.0;
  double beta = 0.0;
  double beta_star = 0.0;
  double continuity = 0.0;          ///< M_n on U_n x V_n
  double continuity_ambient = 0.0;  ///< sup over ambient U x V_n, the constant the quasi-optimality bound uses
  double error = 0.0;               ///< ||u - u_n||_U
  double distance = 0.0;            ///< dist(u, U_n)
  double ratio = 0.0;               ///< error / distance, 0 when both vanish
  double quasi_optimality_bound = 0.0;  ///< continuity_ambient / beta
  double solution_norm = 0.0;           ///< ||u_n||_U
  double data_norm = 0.0;               ///< ||L||_{V_n'}
  double apriori_bound = 0.0;           ///< data_norm / beta
  bool quasi_optimal = false;
  bool apriori_holds = false;
};

struct QuasiOptimalityReport {
  std::vector<GalerkinRun> runs;
  /// ||A u - rhs|| relative to ||rhs||: how exactly `exact` solves the ambient problem.
  double ambient_residual = 0.0;
  [[nodiscard]] bool all_passed() const;
};

/// Solves every level for the functional `rhs` (ambient test coefficients,
/// rhs_i = <L, psi_i>) and checks ||u - u_n|| <= (M_n/beta_n) dist(u, U_n) and
/// ||u_n|| <= ||L||_{V_n'} / beta_n, both with relative slack 1e-8.
QuasiOptimalityReport quasi_optimality_check(const NestedSpaceFamily& family,
                                             const DiscreteForm& ambient, const Vector& exact,
                                             const Vector& rhs);

}  // namespace infsup
