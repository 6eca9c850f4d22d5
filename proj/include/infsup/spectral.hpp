#pragma once

// Selfadjoint positive operators with compact resolvent, represented in their
// eigenbasis (e_k) of H. The energy form is a(u,v) = sum_k lambda_k u_k v_k and
// the V-inner product is taken equal to a, so M = beta = 1. Data f are given by
// their H-coefficients f_k = <f, e_k>_H; the V_s scale has norm
// ||f||_{V_s}^2 = sum_k lambda_k^s f_k^2, with V_{-1} = V', V_0 = H, V_1 = V.
//
// The Galerkin space V_n is span{e_0, ..., e_{n-1}}. The Galerkin solution is
// the weighted truncation u_n = sum_{k<n} (f_k / lambda_k) e_k.

#include <map>
#include <vector>

namespace infsup::spectral {

class SpectralOperator {
 public:
  /// Non-decreasing strictly positive eigenvalues; at least two of them.
  explicit SpectralOperator(std::vector<double> eigenvalues);

  /// lambda_k = (k + 1)^2, k = 0..size-1 (Dirichlet Laplacian on (0, pi)).
  static SpectralOperator dirichlet_laplacian(int size);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  [[nodiscard]] double eigenvalue(int k) const;
  [[nodiscard]] const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  std::vector<double> eigenvalues_;
};

struct VsElement {
  std::vector<double> coeffs;
  double s = 0.0;
};

double vs_norm(const SpectralOperator& op, const VsElement& f);

/// Closed form lambda_n^{-(1+s)/2}: the worst-case V-distance of A^{-1} f to V_n over
/// the unit ball of V_s.
double gamma_n(const SpectralOperator& op, double s, int n);

struct SpectralSolution {
  std::vector<double> exact;     ///< u_k = f_k / lambda_k
  std::vector<double> galerkin;  ///< u_k for k < n, zero beyond
};

SpectralSolution spectral_solve(const SpectralOperator& op, const std::vector<double>& f, int n);

struct ErrorBound {
  double error_h = 0.0;  ///< ||u - u_n||_H
  double bound = 0.0;    ///< lambda_n^{-1-s/2} ||f||_{V_s}
};

ErrorBound error_vs_bound(const SpectralOperator& op, const VsElement& f, int n);

// Periodic example u - u'' = f on (0, 2 pi): e_k(t) = exp(i k t), lambda_k = 1 + k^2,
// V_n = span{e_k : |k| < n}. Integer modes are interleaved as 0, -1, 1, -2, 2, ...

/// Position of Fourier mode k in the interleaved ordering.
int fourier_position(int k);
/// Inverse of fourier_position.
int fourier_mode(int position);
/// Operator on all modes |k| <= max_mode.
SpectralOperator fourier_operator(int max_mode);
/// Number of interleaved modes spanning {e_k : |k| < n}.
inline int fourier_space_dim(int n) { return 2 * n - 1; }

struct FourierReport {
  int n = 0;
  double s = 0.0;
  double gamma = 0.0;        ///< (1 + n^2)^{-(1+s)/2}
  double error_l2 = 0.0;     ///< ||u - u_n||_{L^2}
  double bound = 0.0;        ///< (1 + n^2)^{-1-s/2} ||f||_{V_s}
  double bound_l2 = 0.0;     ///< (1 + n^2)^{-1/2} ||f||_{L^2}
  double f_vs_norm = 0.0;
  double f_l2_norm = 0.0;
  bool bound_holds = false;
  bool bound_l2_holds = false;
};

/// `f_coeffs` maps mode k to its Fourier coefficient; modes beyond the truncation
/// `max_mode` are rejected. max_mode = 0 selects 8 * n (or the largest supplied mode).
FourierReport fourier_example(int n, const std::map<int, double>& f_coeffs, double s,
                              int max_mode = 0);

}  // namespace infsup::spectral
