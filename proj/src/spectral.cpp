#include "infsup/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "infsup/errors.hpp"

namespace infsup::spectral {

namespace {

constexpr double kBoundSlack = 1e-12;

void require_s(double s) {
  INFSUP_THROW_IF(!(s >= -1.0 && s <= 1.0), ErrorCode::IndexOutOfRange,
                  "regularity index s must lie in [-1, 1]");
}

}  // namespace

SpectralOperator::SpectralOperator(std::vector<double> eigenvalues)
    : eigenvalues_(std::move(eigenvalues)) {
  INFSUP_THROW_IF(eigenvalues_.size() < 2, ErrorCode::SizeTooSmall,
                  "spectral truncation needs at least 2 eigenvalues");
  INFSUP_THROW_IF(!(eigenvalues_.front() > 0.0), ErrorCode::InvalidFamily,
                  "eigenvalues must be strictly positive");
  INFSUP_THROW_IF(!std::is_sorted(eigenvalues_.begin(), eigenvalues_.end()),
                  ErrorCode::InvalidFamily, "eigenvalues must be non-decreasing");
}

SpectralOperator SpectralOperator::dirichlet_laplacian(int size) {
  std::vector<double> ev(static_cast<std::size_t>(std::max(size, 0)));
  for (int k = 0; k < size; ++k) {
    ev[static_cast<std::size_t>(k)] = static_cast<double>(k + 1) * (k + 1);
  }
  return SpectralOperator(std::move(ev));
}

double SpectralOperator::eigenvalue(int k) const {
  INFSUP_THROW_IF(k < 0 || k >= size(), ErrorCode::IndexOutOfRange,
                  "eigenvalue index " + std::to_string(k) + " outside [0, " +
                      std::to_string(size()) + ")");
  return eigenvalues_[static_cast<std::size_t>(k)];
}

double vs_norm(const SpectralOperator& op, const VsElement& f) {
  require_s(f.s);
  INFSUP_THROW_IF(static_cast<int>(f.coeffs.size()) > op.size(), ErrorCode::DimensionMismatch,
                  "data longer than the spectral truncation");
  double sum = 0.0;
  for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
    sum += std::pow(op.eigenvalues()[k], f.s) * f.coeffs[k] * f.coeffs[k];
  }
  return std::sqrt(sum);
}

double gamma_n(const SpectralOperator& op, double s, int n) {
  require_s(s);
  return std::pow(op.eigenvalue(n), -(1.0 + s) / 2.0);
}

SpectralSolution spectral_solve(const SpectralOperator& op, const std::vector<double>& f, int n) {
  INFSUP_THROW_IF(n < 0 || n > op.size(), ErrorCode::IndexOutOfRange,
                  "level " + std::to_string(n) + " exceeds truncation");
  INFSUP_THROW_IF(static_cast<int>(f.size()) > op.size(), ErrorCode::DimensionMismatch,
                  "data longer than the spectral truncation");
  SpectralSolution out;
  out.exact.assign(static_cast<std::size_t>(op.size()), 0.0);
  out.galerkin.assign(static_cast<std::size_t>(op.size()), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    out.exact[k] = f[k] / op.eigenvalues()[k];
    if (static_cast<int>(k) < n) {
      out.galerkin[k] = out.exact[k];
    }
  }
  return out;
}

ErrorBound error_vs_bound(const SpectralOperator& op, const VsElement& f, int n) {
  require_s(f.s);
  INFSUP_THROW_IF(n < 0 || n >= op.size(), ErrorCode::IndexOutOfRange,
                  "level " + std::to_string(n) + " needs lambda_n inside the truncation");
  const SpectralSolution sol = spectral_solve(op, f.coeffs, n);
  double tail = 0.0;
  for (std::size_t k = static_cast<std::size_t>(n); k < sol.exact.size(); ++k) {
    const double d = sol.exact[k] - sol.galerkin[k];
    tail += d * d;
  }
  ErrorBound out;
  out.error_h = std::sqrt(tail);
  out.bound = std::pow(op.eigenvalue(n), -1.0 - f.s / 2.0) * vs_norm(op, f);
  return out;
}

int fourier_position(int k) {
  return k > 0 ? 2 * k : (k < 0 ? -2 * k - 1 : 0);
}

int fourier_mode(int position) {
  INFSUP_THROW_IF(position < 0, ErrorCode::IndexOutOfRange, "negative position");
  return position % 2 == 0 ? position / 2 : -(position + 1) / 2;
}

SpectralOperator fourier_operator(int max_mode) {
  INFSUP_THROW_IF(max_mode < 1, ErrorCode::SizeTooSmall, "Fourier truncation needs max_mode >= 1");
  const int size = 2 * max_mode + 1;
  std::vector<double> ev(static_cast<std::size_t>(size));
  for (int p = 0; p < size; ++p) {
    const double k = fourier_mode(p);
    ev[static_cast<std::size_t>(p)] = 1.0 + k * k;
  }
  return SpectralOperator(std::move(ev));
}

FourierReport fourier_example(int n, const std::map<int, double>& f_coeffs, double s,
                              int max_mode) {
  require_s(s);
  INFSUP_THROW_IF(n < 1, ErrorCode::IndexOutOfRange, "Fourier level n must be >= 1");
  int largest = 0;
  for (const auto& [k, v] : f_coeffs) {
    largest = std::max(largest, std::abs(k));
  }
  if (max_mode == 0) {
    max_mode = std::max(8 * n, largest);
  }
  INFSUP_THROW_IF(largest > max_mode, ErrorCode::IndexOutOfRange,
                  "data mode " + std::to_string(largest) + " beyond truncation " +
                      std::to_string(max_mode));
  INFSUP_THROW_IF(n > max_mode, ErrorCode::IndexOutOfRange, "level beyond truncation");

  const SpectralOperator op = fourier_operator(max_mode);
  VsElement f{std::vector<double>(static_cast<std::size_t>(op.size()), 0.0), s};
  for (const auto& [k, v] : f_coeffs) {
    f.coeffs[static_cast<std::size_t>(fourier_position(k))] = v;
  }
  const int dim = fourier_space_dim(n);
  const ErrorBound eb = error_vs_bound(op, f, dim);

  FourierReport r;
  r.n = n;
  r.s = s;
  const double lambda_n = 1.0 + static_cast<double>(n) * n;
  r.gamma = std::pow(lambda_n, -(1.0 + s) / 2.0);
  r.error_l2 = eb.error_h;
  r.f_vs_norm = vs_norm(op, f);
  r.f_l2_norm = vs_norm(op, VsElement{f.coeffs, 0.0});
  r.bound = eb.bound;
  r.bound_l2 = std::pow(lambda_n, -0.5) * r.f_l2_norm;
  r.bound_holds = r.error_l2 <= r.bound * (1.0 + kBoundSlack);
  r.bound_l2_holds = r.error_l2 <= r.bound_l2 * (1.0 + kBoundSlack);
  return r;
}

}  // namespace infsup::spectral
