#include "infsup/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <json.hpp>

#include "infsup/coercivity.hpp"
#include "infsup/counterexamples.hpp"
#include "infsup/errors.hpp"
#include "infsup/fem2d.hpp"
#include "infsup/json_io.hpp"
#include "infsup/matrix_market.hpp"
#include "infsup/random.hpp"
#include "infsup/saddle.hpp"
#include "infsup/spectral.hpp"

namespace infsup::experiments {

namespace {

using report::Cell;
using report::CsvTable;

constexpr double kOracleTolerance = 1e-8;
constexpr double kEqualityTolerance = 1e-10;

Cell optional_cell(const std::optional<double>& v) {
  return v ? Cell{*v} : Cell{std::string("na")};
}

Cell flag(bool b) { return Cell{std::string(b ? "true" : "false")}; }

/// Worst case over unit V_s data supported on k >= n: max_k lambda_k^{-(1+s)/2}.
double gamma_by_enumeration(const spectral::SpectralOperator& op, double s, int n) {
  double best = 0.0;
  for (int k = n; k < op.size(); ++k) {
    best = std::max(best, std::pow(op.eigenvalue(k), -(1.0 + s) / 2.0));
  }
  return best;
}

}  // namespace

Result run_spectral(const config::ExperimentConfig& cfg) {
  std::vector<std::pair<int, double>> data;
  if (cfg.data) {
    data = json_io::read_coefficients(*cfg.data);
  }
  int size = 8 * cfg.levels.back();
  for (const auto& [k, v] : data) {
    INFSUP_THROW_IF(k < 0, ErrorCode::IndexOutOfRange, "spectral data index must be >= 0");
    size = std::max(size, k + 1);
  }
  INFSUP_THROW_IF(cfg.levels.back() >= size, ErrorCode::IndexOutOfRange,
                  "level beyond the truncation");
  const auto op = spectral::SpectralOperator::dirichlet_laplacian(size);

  CsvTable table({"n", "s", "gamma_n", "error_H", "bound", "ratio"});
  bool gamma_ok = true;
  bool bound_ok = true;
  bool sharp_ok = true;
  for (const double s : cfg.s_values) {
    for (const int n : cfg.levels) {
      spectral::VsElement f{std::vector<double>(static_cast<std::size_t>(size), 0.0), s};
      if (data.empty()) {
        f.coeffs[static_cast<std::size_t>(n)] = 1.0;
      } else {
        for (const auto& [k, v] : data) f.coeffs[static_cast<std::size_t>(k)] = v;
      }
      const double gamma = spectral::gamma_n(op, s, n);
      const double oracle = gamma_by_enumeration(op, s, n);
      gamma_ok = gamma_ok && std::abs(gamma - oracle) <= kOracleTolerance * oracle;
      const auto eb = spectral::error_vs_bound(op, f, n);
      const double ratio = eb.bound > 0.0 ? eb.error_h / eb.bound : 0.0;
      bound_ok = bound_ok && eb.error_h <= eb.bound * (1.0 + 1e-12);
      if (data.empty()) {
        sharp_ok = sharp_ok && std::abs(ratio - 1.0) <= kEqualityTolerance;
      }
      table.add_row({static_cast<std::int64_t>(n), s, gamma, eb.error_h, eb.bound, ratio});
    }
  }
  table.add_summary("truncation", static_cast<double>(size));
  table.add_summary("data", data.empty() ? std::string("e_n") : std::string("file"));
  table.add_check("gamma_matches_oracle", gamma_ok);
  table.add_check("bound_holds", bound_ok);
  if (data.empty()) {
    table.add_check("bound_attained", sharp_ok);
  }
  return {std::move(table), std::nullopt};
}

Result run_fourier(const config::ExperimentConfig& cfg) {
  std::map<int, double> coeffs;
  int max_mode = 8 * cfg.levels.back();
  if (cfg.data) {
    for (const auto& [k, v] : json_io::read_coefficients(*cfg.data)) {
      coeffs[k] = v;
      max_mode = std::max(max_mode, std::abs(k));
    }
  } else {
    for (int k = -max_mode; k <= max_mode; ++k) {
      coeffs[k] = 1.0 / (1.0 + static_cast<double>(k) * k);
    }
  }
  CsvTable table({"n", "s", "gamma_n", "error_H", "bound", "ratio", "bound_l2"});
  bool bound_ok = true;
  bool l2_ok = true;
  for (const double s : cfg.s_values) {
    for (const int n : cfg.levels) {
      const auto r = spectral::fourier_example(n, coeffs, s, max_mode);
      bound_ok = bound_ok && r.bound_holds;
      l2_ok = l2_ok && r.bound_l2_holds;
      const double ratio = r.bound > 0.0 ? r.error_l2 / r.bound : 0.0;
      table.add_row(
          {static_cast<std::int64_t>(n), s, r.gamma, r.error_l2, r.bound, ratio, r.bound_l2});
    }
  }
  table.add_summary("max_mode", static_cast<double>(max_mode));
  table.add_summary("data", cfg.data ? std::string("file") : std::string("1/(1+k^2)"));
  table.add_check("bound_holds", bound_ok);
  table.add_check("bound_l2_holds", l2_ok);
  return {std::move(table), std::nullopt};
}

Result run_fem(const config::ExperimentConfig& cfg) {
  fem::CoefficientField coeffs = cfg.problem == "laplacian"
                                     ? fem::CoefficientField::laplacian()
                                     : fem::CoefficientField::default_noncoercive();
  for (const auto& [key, text] : cfg.coefficients) {
    const Expression e = Expression::parse(text);
    if (key == "a11") coeffs.a[0][0] = e;
    if (key == "a22") coeffs.a[1][1] = e;
    if (key == "a12") coeffs.a[0][1] = coeffs.a[1][0] = e;
    if (key == "bx") coeffs.b[0] = e;
    if (key == "by") coeffs.b[1] = e;
    if (key == "cx") coeffs.c[0] = e;
    if (key == "cy") coeffs.c[1] = e;
    if (key == "b0") coeffs.b0 = e;
  }
  const Expression exact = Expression::parse(cfg.exact);
  const auto study = fem::convergence_study(coeffs, exact, cfg.levels);

  CsvTable table({"m", "h", "interior", "solved", "beta_h", "garding_shift", "error_h1",
                  "error_l2", "interpolation_h1", "residual"});
  bool residual_ok = true;
  for (const auto& lv : study.levels) {
    if (lv.solved) {
      residual_ok = residual_ok && lv.residual <= 1e-10 * lv.residual_scale;
    }
    table.add_row({static_cast<std::int64_t>(lv.m), lv.h, static_cast<std::int64_t>(lv.interior),
                   flag(lv.solved), optional_cell(lv.beta_h), optional_cell(lv.garding_shift),
                   lv.error_h1, lv.error_l2, lv.interpolation_h1, lv.residual});
  }
  table.add_summary("slope_h1", study.slope_h1);
  table.add_summary("slope_l2", study.slope_l2);
  table.add_summary("slope_interpolation", study.slope_interpolation);
  table.add_summary("ellipticity", study.ellipticity);
  table.add_summary("coarsest_solvable", static_cast<double>(study.coarsest_solvable));
  table.add_check("h1_order", study.h1_in_range);
  table.add_check("l2_order", study.l2_in_range);
  table.add_check("interpolation_order", study.interpolation_in_range);
  table.add_check("residual_small", residual_ok);
  return {std::move(table), std::nullopt};
}

Result run_saddle(const config::ExperimentConfig& cfg) {
  const saddle::Family family = cfg.family == "unstable"         ? saddle::Family::Unstable
                                : cfg.family == "fourier-stokes" ? saddle::Family::FourierStokes
                                                                 : saddle::Family::Stable;
  Rng rng(cfg.seed);
  CsvTable table({"n", "w_dim", "y_dim", "kernel_dim", "beta_i", "beta_ii", "beta_iii",
                  "global_beta", "brezzi_holds", "bnb_holds", "solve_error"});
  bool equivalent = true;
  bool i_equals_ii = true;
  bool solve_ok = true;
  double lower = std::numeric_limits<double>::infinity();
  std::vector<double> beta_iii;
  for (const int n : cfg.levels) {
    const auto sys = saddle::family_level(family, n);
    const auto eq = saddle::brezzi_bnb_equivalence(sys);
    const auto& b = eq.brezzi;
    equivalent = equivalent && eq.equivalent();
    if (!b.empty_kernel) {
      i_equals_ii = i_equals_ii && std::abs(b.beta_i - b.beta_ii) <= kEqualityTolerance;
      lower = std::min(lower, std::min(b.beta_i, b.beta_ii));
    }
    lower = std::min(lower, b.beta_iii);
    beta_iii.push_back(b.beta_iii);

    const Vector w = rng.normal_vector(sys.w_dim());
    const Vector p = rng.normal_vector(sys.y_dim());
    const Vector f = sys.a_hat() * w + sys.b_hat().transpose() * p;
    const Vector g = sys.b_hat() * w;
    const auto sol = saddle::mixed_solve(sys, f, g);
    const double err = std::max((sol.w - w).cwiseAbs().maxCoeff(), (sol.p - p).cwiseAbs().maxCoeff());
    const double rel = err / std::max(w.cwiseAbs().maxCoeff(), p.cwiseAbs().maxCoeff());
    solve_ok = solve_ok && rel <= 1e-8 / std::max(eq.global_beta, 1e-300);

    table.add_row({static_cast<std::int64_t>(n), static_cast<std::int64_t>(sys.w_dim()),
                   static_cast<std::int64_t>(sys.y_dim()), static_cast<std::int64_t>(b.kernel_dim),
                   b.beta_i, b.beta_ii, b.beta_iii, eq.global_beta, flag(eq.brezzi_holds),
                   flag(eq.bnb_holds), rel});
  }
  table.add_summary("family", cfg.family);
  table.add_summary("min_constant", lower);
  table.add_check("brezzi_bnb_equivalent", equivalent);
  table.add_check("beta_i_equals_beta_ii", i_equals_ii);
  table.add_check("mixed_solve_accurate", solve_ok);
  if (family == saddle::Family::Unstable) {
    bool halves = true;
    for (std::size_t k = 1; k < beta_iii.size(); ++k) {
      const double steps = cfg.levels[k] - cfg.levels[k - 1];
      halves = halves && beta_iii[k - 1] >= std::exp2(steps) * beta_iii[k] * (1.0 - 1e-12);
    }
    table.add_check("beta_iii_halves", halves);
  } else {
    table.add_check("uniformly_stable", lower >= 0.1);
  }
  return {std::move(table), std::nullopt};
}

Result run_diagnose(const config::ExperimentConfig& cfg) {
  const Matrix a = mm::read_dense(*cfg.matrix);
  const GramMatrix gu = cfg.gram_trial ? GramMatrix(mm::read_dense(*cfg.gram_trial))
                                       : GramMatrix::identity(a.cols());
  const GramMatrix gv = cfg.gram_test ? GramMatrix(mm::read_dense(*cfg.gram_test))
                                      : GramMatrix::identity(a.rows());
  const DiscreteForm form(a, gu, gv);
  const auto spectrum = normalized_spectrum(form);
  const auto adjoint = normalized_spectrum(form.adjoint());

  CsvTable table({"trial_dim", "test_dim", "beta", "beta_star", "continuity", "alpha",
                  "theta_star", "certificate_rank", "certificate_alpha"});
  std::optional<CoercivityCertificate> plain;
  std::optional<CoercivityCertificate> essential;
  if (form.is_square()) {
    plain = coercivity_constant(form);
    const int max_rank = cfg.max_rank >= 0 ? cfg.max_rank : static_cast<int>(a.cols() / 2);
    essential = essential_coercivity_certificate(form, max_rank);
  }
  const double beta = spectrum.inf_sup();
  const double beta_star = adjoint.inf_sup();
  table.add_row({static_cast<std::int64_t>(a.cols()), static_cast<std::int64_t>(a.rows()), beta,
                 beta_star, spectrum.continuity(),
                 plain ? Cell{plain->alpha} : Cell{std::string("na")},
                 plain ? Cell{plain->theta_star} : Cell{std::string("na")},
                 essential ? Cell{static_cast<std::int64_t>(essential->rank)} : Cell{std::string("na")},
                 essential ? Cell{essential->alpha} : Cell{std::string("na")}});
  table.add_summary("invertible", beta > kSingularityThreshold ? std::string("true")
                                                               : std::string("false"));
  if (form.is_square()) {
    table.add_check("beta_equals_beta_star",
                    std::abs(beta - beta_star) <= kEqualityTolerance * std::max(beta, 1.0));
  }
  std::optional<std::string> json;
  if (plain) {
    nlohmann::ordered_json j{
        {"beta", beta},
        {"beta_star", beta_star},
        {"continuity", spectrum.continuity()},
        {"coercivity", nlohmann::ordered_json::parse(json_io::certificate_to_json(*plain))},
        {"essential_coercivity", nlohmann::ordered_json::parse(json_io::certificate_to_json(*essential))},
    };
    json = j.dump(2);
  }
  return {std::move(table), json};
}

Result run_counterexample(const config::ExperimentConfig& cfg) {
  const int levels = cfg.levels.back();
  const Index size = 2 * static_cast<Index>(levels) + 2;
  const DiscreteForm form = counterexamples::alternating_form(size);
  const auto adversarial = bnb_scan(counterexamples::adversarial_family(levels, size), form);
  const auto coordinate = bnb_scan(counterexamples::coordinate_family(levels, size), form);
  const auto random =
      bnb_scan(counterexamples::random_nested_family(levels, size, cfg.seed), form);
  const auto rows = counterexamples::unbounded_discrete_solutions(levels, cfg.rate);

  CsvTable table({"n", "beta_n", "beta_tilde_n", "solution_norm", "adversarial_beta",
                  "random_beta", "growth"});
  bool coordinate_ok = true;
  bool adversarial_ok = true;
  bool growth_ok = true;
  for (const auto& r : rows) {
    const auto k = static_cast<std::size_t>(r.n - 1);
    coordinate_ok = coordinate_ok && coordinate.levels[k].beta == 1.0;
    adversarial_ok = adversarial_ok && adversarial.levels[k].beta < 1e-14;
    if (r.n > 1) growth_ok = growth_ok && r.growth >= 1.9;
    if (!std::binary_search(cfg.levels.begin(), cfg.levels.end(), r.n)) {
      continue;
    }
    table.add_row({static_cast<std::int64_t>(r.n), r.beta, r.beta_tilde, r.solution_norm,
                   adversarial.levels[k].beta, random.levels[k].beta, r.growth});
  }
  table.add_summary("ambient_size", static_cast<double>(size));
  table.add_summary("rate", cfg.rate);
  table.add_check("coordinate_beta_one", coordinate_ok);
  table.add_check("adversarial_singular", adversarial_ok);
  table.add_check("solution_growth", growth_ok);
  return {std::move(table), std::nullopt};
}

Result run(const config::ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case config::Kind::Spectral:
      return run_spectral(cfg);
    case config::Kind::Fourier:
      return run_fourier(cfg);
    case config::Kind::Fem:
      return run_fem(cfg);
    case config::Kind::Saddle:
      return run_saddle(cfg);
    case config::Kind::Diagnose:
      return run_diagnose(cfg);
    case config::Kind::Counterexample:
      return run_counterexample(cfg);
  }
  throw Error(ErrorCode::ConfigError, "unknown experiment kind");
}

}  // namespace infsup::experiments
