#pragma once

// Conforming P1 finite elements with homogeneous Dirichlet conditions on the unit
// square for
//   A u = -D_i(a_ij D_j u) + b_j D_j u - D_j(c_j u) + b0 u,
//   a(u, v) = int a_ij D_j u D_i v + b_j D_j u v + c_j u D_j v + b0 u v.
// Matrices are indexed by interior vertices; entry (i, j) is a(phi_j, phi_i).

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infsup/expression.hpp"
#include "infsup/linalg.hpp"

namespace infsup::fem {

struct TriMesh {
  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  ///< counter-clockwise
  std::vector<bool> boundary;
  double h = 0.0;  ///< max circumradius

  [[nodiscard]] int vertex_count() const { return static_cast<int>(vertices.size()); }
  [[nodiscard]] int interior_count() const;
  /// Interior index of each vertex, -1 on the boundary.
  [[nodiscard]] std::vector<int> interior_numbering() const;
};

/// Structured mesh of (0,1)^2 with m subdivisions per side; each square is cut along
/// its (0,0)-(1,1) diagonal. Throws InvalidSubdivision for m < 2.
TriMesh make_unit_square_mesh(int m);

double triangle_area(const TriMesh& mesh, int t);  ///< signed
double circumradius(const TriMesh& mesh, int t);
/// max_T r_T / min_T r_T.
double quasi_uniformity_ratio(const TriMesh& mesh);
/// Recomputes h and checks orientation and vertex indices; throws InvalidSubdivision.
void validate_mesh(TriMesh& mesh);

/// Plain text: "vertices N", N lines "x y boundary", "triangles T", T lines "i j k".
void write_mesh(std::ostream& out, const TriMesh& mesh);
TriMesh read_mesh(std::istream& in);

struct CoefficientField {
  std::array<std::array<Expression, 2>, 2> a;
  std::array<Expression, 2> b;
  std::array<Expression, 2> c;
  Expression b0;

  /// a = I, b = c = 0, b0 = 0.
  static CoefficientField laplacian();
  /// a = I, b = (1, 2), c = (0.5, -1), b0 = -5.
  static CoefficientField default_noncoercive();
  /// A u as an expression.
  [[nodiscard]] Expression apply(const Expression& u) const;
};

struct FemSystem {
  SparseMatrix stiffness;
  SparseMatrix gram_h1;
  SparseMatrix gram_l2;
  /// Stiffness of the principal part a_ij only.
  SparseMatrix principal;
  std::vector<int> interior;  ///< vertex -> interior index, -1 on the boundary
  double ellipticity = 0.0;   ///< min lambda_min(a) over quadrature points
  const TriMesh* mesh = nullptr;
};

struct AssemblyOptions {
  /// Reject coefficient fields whose sampled a(x) is not positive definite. Disabling it
  /// allows degenerate fields such as a pure reaction term.
  bool require_ellipticity = true;
};

/// Throws EllipticityViolation if a sampled a(x) is not positive definite.
FemSystem assemble(const TriMesh& mesh, const CoefficientField& coeffs,
                   const AssemblyOptions& options = {});

/// int f phi_i with the assembly quadrature.
Vector load_vector(const FemSystem& system, const Expression& f);

/// beta_h is computed densely up to this many unknowns (the 16 x 16 structured mesh).
inline constexpr Index kDenseStabilityMaxUnknowns = 225;

struct FemSolution {
  Vector interior_values;
  Vector vertex_values;          ///< zero on the boundary
  double residual = 0.0;         ///< max |A u - F|
  double residual_scale = 0.0;   ///< ||A||_max ||u||_max + ||F||_max
  std::optional<double> beta_h;  ///< normalized inf-sup in the H1 Gram, small meshes only
};

/// Solves a(u_h, chi) = F(chi). Throws SingularDiscreteProblem when beta_h < 1e-12 or
/// the factorization fails.
FemSolution fem_solve(const FemSystem& system, const Vector& load);
FemSolution fem_solve(const FemSystem& system, const Expression& f);

/// P1 interpolant (vertex samples; boundary values kept as sampled).
Vector interpolate(const TriMesh& mesh, const Expression& u);

struct ErrorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double h1 = 0.0;
};

/// ||u - u_h|| with a 7-point degree-5 rule; u_h given by vertex values.
ErrorNorms error_norms(const TriMesh& mesh, const Vector& vertex_values, const Expression& u);

struct LevelResult {
  int m = 0;
  double h = 0.0;
  int interior = 0;
  bool solved = false;
  std::string failure;
  std::optional<double> beta_h;
  std::optional<double> garding_shift;
  std::optional<double> garding_alpha;
  double error_h1 = 0.0;
  double error_l2 = 0.0;
  double interpolation_h1 = 0.0;
  double residual = 0.0;
  double residual_scale = 0.0;
};

struct ConvergenceReport {
  std::vector<LevelResult> levels;
  double slope_h1 = 0.0;
  double slope_l2 = 0.0;
  double slope_interpolation = 0.0;
  int coarsest_solvable = 0;  ///< m of the first level that solved
  double ellipticity = 0.0;
  bool h1_in_range = false;
  bool l2_in_range = false;
  bool interpolation_in_range = false;
};

struct StudyOptions {
  bool solve = true;
  /// Gårding constants are computed densely up to this many subdivisions.
  int garding_max_subdivisions = 32;
};

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Needs at least 3 strictly increasing levels with m >= 2 (InsufficientLevels otherwise)
/// and at least 3 solvable ones when solving.
ConvergenceReport convergence_study(const CoefficientField& coeffs, const Expression& exact,
                                    const std::vector<int>& levels, const StudyOptions& options = {});

}  // namespace infsup::fem
