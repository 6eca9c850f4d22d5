#include "infsup/fem2d.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include "infsup/coercivity.hpp"

namespace infsup::fem {

namespace {

using Point = std::array<double, 2>;

struct Geometry {
  std::array<Point, 3> p;
  double area = 0.0;
  std::array<Point, 3> grad;  ///< gradients of the barycentric coordinates
};

Geometry geometry(const TriMesh& mesh, int t) {
  Geometry g;
  const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
  for (int k = 0; k < 3; ++k) {
    g.p[static_cast<std::size_t>(k)] = mesh.vertices[static_cast<std::size_t>(tri[static_cast<std::size_t>(k)])];
  }
  const auto& [p0, p1, p2] = g.p;
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
  g.area = 0.5 * det;
  for (int k = 0; k < 3; ++k) {
    const Point& a = g.p[static_cast<std::size_t>((k + 1) % 3)];
    const Point& b = g.p[static_cast<std::size_t>((k + 2) % 3)];
    g.grad[static_cast<std::size_t>(k)] = {(a[1] - b[1]) / det, (b[0] - a[0]) / det};
  }
  return g;
}

Point at(const Geometry& g, const std::array<double, 3>& bary) {
  Point x{0.0, 0.0};
  for (std::size_t k = 0; k < 3; ++k) {
    x[0] += bary[k] * g.p[k][0];
    x[1] += bary[k] * g.p[k][1];
  }
  return x;
}

// Edge-midpoint rule, exact for quadratics.
constexpr std::array<std::array<double, 3>, 3> kMidpoints{{
    {0.5, 0.5, 0.0},
    {0.0, 0.5, 0.5},
    {0.5, 0.0, 0.5},
}};

struct QuadraturePoint {
  std::array<double, 3> bary;
  double weight;  ///< relative to the triangle area
};

// Degree-5 seven-point rule.
const std::array<QuadraturePoint, 7>& seven_point_rule() {
  static const std::array<QuadraturePoint, 7> rule = [] {
    const double a1 = 0.059715871789769820;
    const double b1 = 0.470142064105115090;
    const double w1 = 0.132394152788506181;
    const double a2 = 0.797426985353087322;
    const double b2 = 0.101286507323456339;
    const double w2 = 0.125939180544827153;
    return std::array<QuadraturePoint, 7>{{
        {{1.0 / 3, 1.0 / 3, 1.0 / 3}, 0.225},
        {{a1, b1, b1}, w1},
        {{b1, a1, b1}, w1},
        {{b1, b1, a1}, w1},
        {{a2, b2, b2}, w2},
        {{b2, a2, b2}, w2},
        {{b2, b2, a2}, w2},
    }};
  }();
  return rule;
}

double dot(const Point& a, const Point& b) {
  return a[0] * b[0] + a[1] * b[1];
}

struct Contribution {
  int row;
  int col;
  std::array<int, 3> key;
  std::array<double, 4> values;  ///< stiffness, H1 Gram, L2 Gram, principal
};

SparseMatrix build(int n, const std::vector<std::tuple<int, int, double>>& entries) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (const auto& [r, c, v] : entries) {
    triplets.emplace_back(r, c, v);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace

int TriMesh::interior_count() const {
  return static_cast<int>(std::count(boundary.begin(), boundary.end(), false));
}

std::vector<int> TriMesh::interior_numbering() const {
  std::vector<int> out(vertices.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (!boundary[v]) {
      out[v] = next++;
    }
  }
  return out;
}

double triangle_area(const TriMesh& mesh, int t) {
  return geometry(mesh, t).area;
}

double circumradius(const TriMesh& mesh, int t) {
  const Geometry g = geometry(mesh, t);
  auto len = [](const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); };
  return len(g.p[0], g.p[1]) * len(g.p[1], g.p[2]) * len(g.p[2], g.p[0]) / (4.0 * std::abs(g.area));
}

double quasi_uniformity_ratio(const TriMesh& mesh) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const double r = circumradius(mesh, t);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo;
}

void validate_mesh(TriMesh& mesh) {
  INFSUP_THROW_IF(mesh.triangles.empty(), ErrorCode::InvalidSubdivision, "mesh has no triangles");
  INFSUP_THROW_IF(mesh.boundary.size() != mesh.vertices.size(), ErrorCode::InvalidSubdivision,
                  "boundary mask size differs from vertex count");
  const int nv = mesh.vertex_count();
  double h = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    for (const int v : mesh.triangles[static_cast<std::size_t>(t)]) {
      INFSUP_THROW_IF(v < 0 || v >= nv, ErrorCode::InvalidSubdivision,
                      "triangle " + std::to_string(t) + " references vertex " + std::to_string(v));
    }
    INFSUP_THROW_IF(!(triangle_area(mesh, t) > 0.0), ErrorCode::InvalidSubdivision,
                    "triangle " + std::to_string(t) + " is degenerate or clockwise");
    h = std::max(h, circumradius(mesh, t));
  }
  mesh.h = h;
}

TriMesh make_unit_square_mesh(int m) {
  INFSUP_THROW_IF(m < 2, ErrorCode::InvalidSubdivision,
                  "need at least 2 subdivisions, got " + std::to_string(m));
  TriMesh mesh;
  const int side = m + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(side * side));
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m});
      mesh.boundary.push_back(i == 0 || j == 0 || i == m || j == m);
    }
  }
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int v00 = j * side + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + side;
      const int v11 = v01 + 1;
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void write_mesh(std::ostream& out, const TriMesh& mesh) {
  char buf[96];
  out << "vertices " << mesh.vertices.size() << '\n';
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", mesh.vertices[v][0], mesh.vertices[v][1],
                  mesh.boundary[v] ? 1 : 0);
    out << buf;
  }
  out << "triangles " << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) {
    out << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

TriMesh read_mesh(std::istream& in) {
  TriMesh mesh;
  std::string word;
  std::size_t count = 0;
  INFSUP_THROW_IF(!(in >> word >> count) || word != "vertices", ErrorCode::ParseError,
                  "mesh must start with 'vertices N'");
  for (std::size_t v = 0; v < count; ++v) {
    double x = 0.0;
    double y = 0.0;
    int b = 0;
    INFSUP_THROW_IF(!(in >> x >> y >> b), ErrorCode::ParseError,
                    "bad vertex line " + std::to_string(v));
    mesh.vertices.push_back({x, y});
    mesh.boundary.push_back(b != 0);
  }
  INFSUP_THROW_IF(!(in >> word >> count) || word != "triangles", ErrorCode::ParseError,
                  "expected 'triangles N'");
  for (std::size_t t = 0; t < count; ++t) {
    std::array<int, 3> tri{};
    INFSUP_THROW_IF(!(in >> tri[0] >> tri[1] >> tri[2]), ErrorCode::ParseError,
                    "bad triangle line " + std::to_string(t));
    mesh.triangles.push_back(tri);
  }
  validate_mesh(mesh);
  return mesh;
}

CoefficientField CoefficientField::laplacian() {
  CoefficientField c;
  c.a[0][0] = Expression::constant(1.0);
  c.a[1][1] = Expression::constant(1.0);
  return c;
}

CoefficientField CoefficientField::default_noncoercive() {
  CoefficientField c = laplacian();
  c.b = {Expression::constant(1.0), Expression::constant(2.0)};
  c.c = {Expression::constant(0.5), Expression::constant(-1.0)};
  c.b0 = Expression::constant(-5.0);
  return c;
}

Expression CoefficientField::apply(const Expression& u) const {
  const std::array<Expression, 2> du{u.derivative('x'), u.derivative('y')};
  const std::array<char, 2> var{'x', 'y'};
  Expression out = b0 * u;
  for (std::size_t i = 0; i < 2; ++i) {
    Expression flux;
    for (std::size_t j = 0; j < 2; ++j) {
      flux = flux + a[i][j] * du[j];
      if (i == 0) {
        out = out + b[j] * du[j] - (c[j] * u).derivative(var[j]);
      }
    }
    out = out - flux.derivative(var[i]);
  }
  return out;
}

FemSystem assemble(const TriMesh& mesh, const CoefficientField& coeffs,
                   const AssemblyOptions& options) {
  FemSystem sys;
  sys.mesh = &mesh;
  sys.interior = mesh.interior_numbering();
  const int n = mesh.interior_count();
  sys.ellipticity = std::numeric_limits<double>::infinity();

  std::vector<Contribution> contributions;
  contributions.reserve(mesh.triangles.size() * 9);
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    std::array<int, 3> key = tri;
    std::sort(key.begin(), key.end());
    const Geometry g = geometry(mesh, t);
    const double w = g.area / 3.0;
    std::array<std::array<std::array<double, 4>, 3>, 3> local{};
    for (const auto& bary : kMidpoints) {
      const Point x = at(g, bary);
      Eigen::Matrix2d a;
      a << coeffs.a[0][0](x[0], x[1]), coeffs.a[0][1](x[0], x[1]), coeffs.a[1][0](x[0], x[1]),
          coeffs.a[1][1](x[0], x[1]);
      INFSUP_THROW_IF(std::abs(a(0, 1) - a(1, 0)) > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()),
                      ErrorCode::EllipticityViolation, "a_ij is not symmetric");
      const double amin = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(a, Eigen::EigenvaluesOnly)
                              .eigenvalues()(0);
      INFSUP_THROW_IF(options.require_ellipticity && !(amin > 0.0), ErrorCode::EllipticityViolation,
                      "a_ij not positive definite at (" + std::to_string(x[0]) + ", " +
                          std::to_string(x[1]) + ")");
      sys.ellipticity = std::min(sys.ellipticity, amin);
      const Point b{coeffs.b[0](x[0], x[1]), coeffs.b[1](x[0], x[1])};
      const Point c{coeffs.c[0](x[0], x[1]), coeffs.c[1](x[0], x[1])};
      const double b0 = coeffs.b0(x[0], x[1]);
      for (std::size_t i = 0; i < 3; ++i) {
        const Point& gi = g.grad[i];
        const Point agi{a(0, 0) * gi[0] + a(0, 1) * gi[1], a(1, 0) * gi[0] + a(1, 1) * gi[1]};
        for (std::size_t j = 0; j < 3; ++j) {
          const Point& gj = g.grad[j];
          const double principal = dot(agi, gj);
          const double mass = bary[i] * bary[j];
          auto& e = local[i][j];
          e[0] += w * (principal + dot(b, gj) * bary[i] + bary[j] * dot(c, gi) + b0 * mass);
          e[1] += w * (dot(gi, gj) + mass);
          e[2] += w * mass;
          e[3] += w * principal;
        }
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const int row = sys.interior[static_cast<std::size_t>(tri[i])];
      if (row < 0) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        const int col = sys.interior[static_cast<std::size_t>(tri[j])];
        if (col < 0) continue;
        contributions.push_back({row, col, key, local[i][j]});
      }
    }
  }
  // Ordered accumulation makes the result independent of the triangle order.
  std::sort(contributions.begin(), contributions.end(), [](const Contribution& l, const Contribution& r) {
    return std::tie(l.row, l.col, l.key) < std::tie(r.row, r.col, r.key);
  });
  std::array<std::vector<std::tuple<int, int, double>>, 4> entries;
  for (std::size_t k = 0; k < contributions.size();) {
    std::array<double, 4> sum{};
    std::size_t l = k;
    for (; l < contributions.size() && contributions[l].row == contributions[k].row &&
           contributions[l].col == contributions[k].col;
         ++l) {
      for (std::size_t q = 0; q < 4; ++q) {
        sum[q] += contributions[l].values[q];
      }
    }
    for (std::size_t q = 0; q < 4; ++q) {
      entries[q].emplace_back(contributions[k].row, contributions[k].col, sum[q]);
    }
    k = l;
  }
  sys.stiffness = build(n, entries[0]);
  sys.gram_h1 = build(n, entries[1]);
  sys.gram_l2 = build(n, entries[2]);
  sys.principal = build(n, entries[3]);
  return sys;
}

Vector load_vector(const FemSystem& system, const Expression& f) {
  const TriMesh& mesh = *system.mesh;
  Vector load = Vector::Zero(mesh.interior_count());
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    const Geometry g = geometry(mesh, t);
    const double w = g.area / 3.0;
    for (const auto& bary : kMidpoints) {
      const Point x = at(g, bary);
      const double fx = f(x[0], x[1]);
      for (std::size_t i = 0; i < 3; ++i) {
        const int row = system.interior[static_cast<std::size_t>(tri[i])];
        if (row >= 0) {
          load(row) += w * fx * bary[i];
        }
      }
    }
  }
  return load;
}

FemSolution fem_solve(const FemSystem& system, const Vector& load) {
  const TriMesh& mesh = *system.mesh;
  INFSUP_THROW_IF(load.size() != system.stiffness.rows(), ErrorCode::DimensionMismatch,
                  "load vector does not match the system");
  FemSolution sol;
  if (system.stiffness.rows() > 0 && system.stiffness.rows() <= kDenseStabilityMaxUnknowns) {
    const Matrix gram(system.gram_h1);
    const DiscreteForm form{Matrix(system.stiffness), GramMatrix(gram), GramMatrix(gram)};
    sol.beta_h = normalized_spectrum(form).inf_sup();
    INFSUP_THROW_IF(*sol.beta_h < kSingularityThreshold, ErrorCode::SingularDiscreteProblem,
                    "discrete inf-sup constant " + std::to_string(*sol.beta_h));
  }
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(system.stiffness);
  INFSUP_THROW_IF(lu.info() != Eigen::Success, ErrorCode::SingularDiscreteProblem,
                  "sparse LU factorization failed");
  sol.interior_values = lu.solve(load);
  INFSUP_THROW_IF(lu.info() != Eigen::Success || !sol.interior_values.allFinite(),
                  ErrorCode::SingularDiscreteProblem, "sparse LU solve failed");
  sol.vertex_values = Vector::Zero(mesh.vertex_count());
  for (std::size_t v = 0; v < system.interior.size(); ++v) {
    if (system.interior[v] >= 0) {
      sol.vertex_values(static_cast<Index>(v)) = sol.interior_values(system.interior[v]);
    }
  }
  const Vector r = system.stiffness * sol.interior_values - load;
  sol.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
  double a_max = 0.0;
  for (Index k = 0; k < system.stiffness.nonZeros(); ++k) {
    a_max = std::max(a_max, std::abs(system.stiffness.valuePtr()[k]));
  }
  sol.residual_scale = r.size() ? a_max * sol.interior_values.cwiseAbs().maxCoeff() +
                                      load.cwiseAbs().maxCoeff()
                                : 0.0;
  return sol;
}

FemSolution fem_solve(const FemSystem& system, const Expression& f) {
  return fem_solve(system, load_vector(system, f));
}

Vector interpolate(const TriMesh& mesh, const Expression& u) {
  Vector out(mesh.vertex_count());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    out(static_cast<Index>(v)) = u(mesh.vertices[v][0], mesh.vertices[v][1]);
  }
  return out;
}

ErrorNorms error_norms(const TriMesh& mesh, const Vector& vertex_values, const Expression& u) {
  INFSUP_THROW_IF(vertex_values.size() != mesh.vertex_count(), ErrorCode::DimensionMismatch,
                  "vertex values do not match the mesh");
  const Expression ux = u.derivative('x');
  const Expression uy = u.derivative('y');
  double l2 = 0.0;
  double semi = 0.0;
  for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(t)];
    const Geometry g = geometry(mesh, t);
    std::array<double, 3> vals{};
    Point grad{0.0, 0.0};
    for (std::size_t k = 0; k < 3; ++k) {
      vals[k] = vertex_values(tri[k]);
      grad[0] += vals[k] * g.grad[k][0];
      grad[1] += vals[k] * g.grad[k][1];
    }
    for (const auto& q : seven_point_rule()) {
      const Point x = at(g, q.bary);
      const double uh = q.bary[0] * vals[0] + q.bary[1] * vals[1] + q.bary[2] * vals[2];
      const double e = u(x[0], x[1]) - uh;
      const double ex = ux(x[0], x[1]) - grad[0];
      const double ey = uy(x[0], x[1]) - grad[1];
      l2 += q.weight * g.area * e * e;
      semi += q.weight * g.area * (ex * ex + ey * ey);
    }
  }
  return {std::sqrt(l2), std::sqrt(semi), std::sqrt(l2 + semi)};
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  INFSUP_THROW_IF(x.size() != y.size() || x.size() < 2, ErrorCode::InsufficientLevels,
                  "slope needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const CoefficientField& coeffs, const Expression& exact,
                                    const std::vector<int>& levels, const StudyOptions& options) {
  INFSUP_THROW_IF(levels.size() < 3, ErrorCode::InsufficientLevels,
                  "convergence study needs at least 3 levels, got " + std::to_string(levels.size()));
  for (std::size_t k = 1; k < levels.size(); ++k) {
    INFSUP_THROW_IF(levels[k] <= levels[k - 1], ErrorCode::InsufficientLevels,
                    "levels must increase strictly");
  }
  const Expression f = coeffs.apply(exact);
  ConvergenceReport report;
  report.ellipticity = std::numeric_limits<double>::infinity();
  std::vector<double> hs, e_h1, e_l2, hs_interp, e_interp;
  for (const int m : levels) {
    const TriMesh mesh = make_unit_square_mesh(m);
    const FemSystem sys = assemble(mesh, coeffs);
    report.ellipticity = std::min(report.ellipticity, sys.ellipticity);
    LevelResult lv;
    lv.m = m;
    lv.h = mesh.h;
    lv.interior = mesh.interior_count();
    lv.interpolation_h1 = error_norms(mesh, interpolate(mesh, exact), exact).h1;
    hs_interp.push_back(lv.h);
    e_interp.push_back(lv.interpolation_h1);
    if (m <= options.garding_max_subdivisions) {
      try {
        const GardingConstants gc =
            garding_constants(Matrix(sys.principal), Matrix(sys.stiffness - sys.principal),
                              GramMatrix(Matrix(sys.gram_h1)), GramMatrix(Matrix(sys.gram_l2)));
        lv.garding_shift = gc.c_shift;
        lv.garding_alpha = gc.alpha;
      } catch (const Error&) {
        lv.garding_shift.reset();
      }
    }
    if (options.solve) {
      try {
        const FemSolution sol = fem_solve(sys, load_vector(sys, f));
        lv.beta_h = sol.beta_h;
        const ErrorNorms err = error_norms(mesh, sol.vertex_values, exact);
        lv.solved = true;
        lv.error_h1 = err.h1;
        lv.error_l2 = err.l2;
        lv.residual = sol.residual;
        lv.residual_scale = sol.residual_scale;
        hs.push_back(lv.h);
        e_h1.push_back(err.h1);
        e_l2.push_back(err.l2);
        if (report.coarsest_solvable == 0) {
          report.coarsest_solvable = m;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularDiscreteProblem) throw;
        lv.failure = e.what();
      }
    }
    report.levels.push_back(std::move(lv));
  }
  report.slope_interpolation = log_log_slope(hs_interp, e_interp);
  report.interpolation_in_range =
      report.slope_interpolation >= 0.85 && report.slope_interpolation <= 1.15;
  if (options.solve) {
    INFSUP_THROW_IF(hs.size() < 3, ErrorCode::InsufficientLevels,
                    "only " + std::to_string(hs.size()) + " levels were solvable");
    report.slope_h1 = log_log_slope(hs, e_h1);
    report.slope_l2 = log_log_slope(hs, e_l2);
    report.h1_in_range = report.slope_h1 >= 0.85 && report.slope_h1 <= 1.15;
    report.l2_in_range = report.slope_l2 >= 1.8 && report.slope_l2 <= 2.2;
  }
  return report;
}

}  // namespace infsup::fem
