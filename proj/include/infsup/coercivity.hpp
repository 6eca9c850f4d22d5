#pragma once

// Numerical range support values, rotated coercivity constants, essential
// coercivity certificates by finite-rank augmentation, and Garding shifts.
//
// For a square form with Gram-normalized matrix B, rotation by e^{i theta}
// turns the real part of a(u,u) into the quadratic form of the Hermitian
// matrix H(theta) = cos(theta) sym(B) + i sin(theta) skew(B). The support
// value at theta is lambda_min(H(theta)) and the coercivity constant is its
// maximum over theta (real scalars: theta in {0, pi} only).

#include <vector>

#include "infsup/linalg.hpp"

namespace infsup {

enum class ScalarField { Real, Complex };

inline constexpr int kAngleGridSize = 720;
inline constexpr double kAngleRefinementTolerance = 1e-8;

struct NumericalRangeSample {
  std::vector<double> angles;
  std::vector<double> support_values;
};

/// Support values of W(a). Real mode samples only theta = 0 and theta = pi;
/// complex mode samples `samples` uniform angles in [0, 2 pi).
NumericalRangeSample numerical_range(const DiscreteForm& form, ScalarField field,
                                     int samples = kAngleGridSize);

/// Subspace used to augment the form in a certificate.
enum class ProxyKind {
  Eigenvector,  ///< most negative eigenvectors of H(theta)
  Coordinate,   ///< span of the first r basis functions
};

struct CoercivityCertificate {
  double alpha = 0.0;
  double theta_star = 0.0;
  int rank = 0;
  /// The certificate reads Re(e^{i theta} a(u,u)) + weight ||P u||^2 >= alpha ||u||^2.
  double weight = 0.0;
  /// Coefficient-space basis of range(P), G-orthonormal; empty for rank 0.
  Eigen::MatrixXcd projector_basis;
};

/// max over theta of lambda_min(H(theta)), clipped below at 0.
CoercivityCertificate coercivity_constant(const DiscreteForm& form,
                                          ScalarField field = ScalarField::Real);

/// Smallest r <= max_rank admitting alpha > 0. Returns rank = max_rank and alpha = 0 if
/// none exists at this truncation.
CoercivityCertificate essential_coercivity_certificate(const DiscreteForm& form, int max_rank,
                                                       ProxyKind proxy = ProxyKind::Eigenvector,
                                                       ScalarField field = ScalarField::Real);

/// lambda_min over unit vectors of Re(e^{i theta} a(u,u)) + weight ||P u||^2; used to verify
/// a certificate independently of how it was found.
double certificate_margin(const DiscreteForm& form, const CoercivityCertificate& certificate);

struct GardingConstants {
  double c_shift = 0.0;
  double alpha = 0.0;
};

inline constexpr double kMaxGardingShift = 1e6;

/// Smallest c >= 0 with sym(a0 + lower) + c G_H >= alpha G_V, alpha = half the
/// coercivity constant of a0 relative to G_V. Throws NoShiftFound when a0 is not
/// coercive or the required shift exceeds kMaxGardingShift.
GardingConstants garding_constants(const Matrix& a0, const Matrix& lower, const GramMatrix& gram_v,
                                   const GramMatrix& gram_h);

}  // namespace infsup
