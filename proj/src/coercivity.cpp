#include "infsup/coercivity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace infsup {

namespace {

using ComplexMatrix = Eigen::MatrixXcd;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct RotationParts {
  Matrix sym;
  Matrix skew;
  const GramMatrix* gram;
};

RotationParts rotation_parts(const DiscreteForm& form) {
  INFSUP_THROW_IF(!form.is_square(), ErrorCode::DimensionMismatch,
                  "coercivity requires a square form");
  const Matrix& gt = form.gram_trial().entries();
  const Matrix& gs = form.gram_test().entries();
  INFSUP_THROW_IF((gt - gs).cwiseAbs().maxCoeff() > 1e-12 * gt.cwiseAbs().maxCoeff(),
                  ErrorCode::DimensionMismatch,
                  "a(u,u) needs identical trial and test spaces (Grams differ)");
  const Matrix b = form.normalized_matrix();
  return {0.5 * (b + b.transpose()), 0.5 * (b - b.transpose()), &form.gram_trial()};
}

bool is_real_angle(double theta) {
  return theta == 0.0 || theta == std::numbers::pi;
}

ComplexMatrix rotated(const RotationParts& p, double theta) {
  const std::complex<double> i_sin(0.0, is_real_angle(theta) ? 0.0 : std::sin(theta));
  return std::cos(theta) * p.sym.cast<std::complex<double>>() +
         i_sin * p.skew.cast<std::complex<double>>();
}

/// Ascending eigenvalues (and optionally eigenvectors) of H(theta).
struct RotatedSpectrum {
  Vector values;
  ComplexMatrix vectors;
};

RotatedSpectrum rotated_spectrum(const RotationParts& p, double theta, bool vectors) {
  const auto options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  // Real angles keep the computation real so results are bit-identical to real mode.
  if (is_real_angle(theta)) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(std::cos(theta) * p.sym, options);
    RotatedSpectrum out{es.eigenvalues(), {}};
    if (vectors) {
      out.vectors = es.eigenvectors().cast<std::complex<double>>();
    }
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rotated(p, theta), options);
  RotatedSpectrum out{es.eigenvalues(), {}};
  if (vectors) {
    out.vectors = es.eigenvectors();
  }
  return out;
}

struct AngleOptimum {
  double theta = 0.0;
  double value = 0.0;
};

/// Maximizes `objective` over the angle grid of the given field; complex mode
/// refines the best grid cell by golden-section search. Ties go to the smallest angle.
AngleOptimum maximize_over_angles(const std::function<double(double)>& objective,
                                  ScalarField field) {
  if (field == ScalarField::Real) {
    const double at_zero = objective(0.0);
    const double at_pi = objective(std::numbers::pi);
    return at_pi > at_zero ? AngleOptimum{std::numbers::pi, at_pi} : AngleOptimum{0.0, at_zero};
  }
  const double step = kTwoPi / kAngleGridSize;
  AngleOptimum best{0.0, objective(0.0)};
  for (int j = 1; j < kAngleGridSize; ++j) {
    const double theta = step * j;
    const double v = objective(theta);
    if (v > best.value) {
      best = {theta, v};
    }
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best.theta - step;
  double hi = best.theta + step;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (hi - lo > kAngleRefinementTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    }
  }
  const double theta = 0.5 * (lo + hi);
  const double value = objective(theta);
  if (value > best.value) {
    best = {std::fmod(theta + kTwoPi, kTwoPi), value};
  }
  return best;
}

double positivity_floor(const RotationParts& p) {
  const double scale = std::max(p.sym.cwiseAbs().maxCoeff(), p.skew.cwiseAbs().maxCoeff());
  return 1e-12 * std::max(scale, 1.0);
}

}  // namespace

NumericalRangeSample numerical_range(const DiscreteForm& form, ScalarField field, int samples) {
  const RotationParts parts = rotation_parts(form);
  NumericalRangeSample out;
  if (field == ScalarField::Real) {
    out.angles = {0.0, std::numbers::pi};
  } else {
    INFSUP_THROW_IF(samples < 4, ErrorCode::InvalidFamily, "need at least 4 angle samples");
    for (int j = 0; j < samples; ++j) {
      out.angles.push_back(kTwoPi * j / samples);
    }
  }
  for (const double theta : out.angles) {
    out.support_values.push_back(rotated_spectrum(parts, theta, false).values(0));
  }
  return out;
}

CoercivityCertificate coercivity_constant(const DiscreteForm& form, ScalarField field) {
  const RotationParts parts = rotation_parts(form);
  const AngleOptimum opt = maximize_over_angles(
      [&](double theta) { return rotated_spectrum(parts, theta, false).values(0); }, field);
  CoercivityCertificate cert;
  cert.alpha = std::max(0.0, opt.value);
  cert.theta_star = opt.theta;
  cert.rank = 0;
  cert.weight = 0.0;
  return cert;
}

double certificate_margin(const DiscreteForm& form, const CoercivityCertificate& certificate) {
  const RotationParts parts = rotation_parts(form);
  ComplexMatrix h = rotated(parts, certificate.theta_star);
  if (certificate.rank > 0) {
    const ComplexMatrix y =
        parts.gram->factor().transpose().cast<std::complex<double>>() * certificate.projector_basis;
    h += certificate.weight * (y * y.adjoint());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

CoercivityCertificate essential_coercivity_certificate(const DiscreteForm& form, int max_rank,
                                                       ProxyKind proxy, ScalarField field) {
  const RotationParts parts = rotation_parts(form);
  const Index n = form.trial_dim();
  INFSUP_THROW_IF(max_rank < 0 || max_rank > n, ErrorCode::IndexOutOfRange,
                  "max_rank must lie in [0, dim]");
  const double floor = positivity_floor(parts);
  const Matrix& lower = parts.gram->factor();
  auto to_coefficients = [&](const ComplexMatrix& y) -> ComplexMatrix {
    return lower.transpose().cast<std::complex<double>>().triangularView<Eigen::Upper>().solve(y);
  };

  CoercivityCertificate last;
  for (int r = 0; r <= max_rank; ++r) {
    CoercivityCertificate cert;
    cert.rank = r;
    if (r == n) {
      // P = Id: any positive level is attainable; normalize to alpha = 1.
      const RotatedSpectrum s = rotated_spectrum(parts, 0.0, false);
      cert.theta_star = 0.0;
      cert.weight = std::max(0.0, 1.0 - s.values(0));
      cert.projector_basis = to_coefficients(ComplexMatrix::Identity(n, n));
      cert.alpha = certificate_margin(form, cert);
      return cert;
    }
    if (proxy == ProxyKind::Eigenvector) {
      const AngleOptimum opt = maximize_over_angles(
          [&](double theta) { return rotated_spectrum(parts, theta, false).values(r); }, field);
      cert.theta_star = opt.theta;
      if (opt.value > floor) {
        const RotatedSpectrum s = rotated_spectrum(parts, opt.theta, true);
        cert.weight = r > 0 ? std::max(0.0, s.values(r) - s.values(0)) : 0.0;
        if (r > 0) {
          cert.projector_basis = to_coefficients(s.vectors.leftCols(r));
        }
        cert.alpha = r > 0 ? certificate_margin(form, cert) : opt.value;
        if (cert.alpha > floor) {
          return cert;
        }
      }
    } else {
      // Orthonormal (Euclidean) basis of L^T span{e_0..e_{r-1}} and its complement.
      Matrix q_full = Matrix::Identity(n, n);
      if (r > 0) {
        const Matrix y = lower.transpose();
        Eigen::HouseholderQR<Matrix> qr(y.leftCols(r));
        q_full = qr.householderQ();
      }
      const Matrix range = q_full.leftCols(r);
      const Matrix complement = q_full.rightCols(n - r);
      const AngleOptimum opt = maximize_over_angles(
          [&](double theta) {
            const ComplexMatrix c = complement.cast<std::complex<double>>();
            const ComplexMatrix compressed = c.adjoint() * rotated(parts, theta) * c;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(compressed, Eigen::EigenvaluesOnly);
            return es.eigenvalues()(0);
          },
          field);
      cert.theta_star = opt.theta;
      if (r > 0) {
        cert.projector_basis = to_coefficients(range.cast<std::complex<double>>());
      }
      if (opt.value > floor) {
        if (r == 0) {
          cert.alpha = opt.value;
          return cert;
        }
        const RotatedSpectrum s = rotated_spectrum(parts, opt.theta, false);
        double weight = std::max(1.0, s.values(n - 1) - s.values(0));
        for (int k = 0; k < 64; ++k, weight *= 2.0) {
          cert.weight = weight;
          cert.alpha = certificate_margin(form, cert);
          if (cert.alpha >= 0.5 * opt.value) {
            break;
          }
        }
        if (cert.alpha > floor) {
          return cert;
        }
      }
    }
    last = cert;
  }
  last.alpha = 0.0;
  last.rank = max_rank;
  return last;
}

GardingConstants garding_constants(const Matrix& a0, const Matrix& lower, const GramMatrix& gram_v,
                                   const GramMatrix& gram_h) {
  const Index n = a0.rows();
  INFSUP_THROW_IF(a0.cols() != n || lower.rows() != n || lower.cols() != n || gram_v.dim() != n ||
                      gram_h.dim() != n,
                  ErrorCode::DimensionMismatch, "Garding inputs must share one dimension");
  const Matrix sym_a0 = 0.5 * (a0 + a0.transpose());
  const Matrix& lv = gram_v.factor();
  const Matrix left = lv.triangularView<Eigen::Lower>().solve(sym_a0);
  const Matrix normalized =
      lv.triangularView<Eigen::Lower>().solve(left.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (normalized + normalized.transpose()),
                                           Eigen::EigenvaluesOnly);
  const double alpha0 = es.eigenvalues()(0);
  INFSUP_THROW_IF(!(alpha0 > 0.0), ErrorCode::NoShiftFound,
                  "principal part is not coercive (alpha0 = " + std::to_string(alpha0) + ")");

  GardingConstants out;
  out.alpha = 0.5 * alpha0;
  const Matrix a = a0 + lower;
  const Matrix sym_a = 0.5 * (a + a.transpose());
  // Need sym_a + c G_H - alpha G_V >= 0, i.e. c >= max x^T (alpha G_V - sym_a) x / x^T G_H x.
  const Matrix deficit = out.alpha * gram_v.entries() - sym_a;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> pencil(0.5 * (deficit + deficit.transpose()),
                                                          gram_h.entries(), Eigen::EigenvaluesOnly);
  INFSUP_THROW_IF(pencil.info() != Eigen::Success, ErrorCode::NoShiftFound,
                  "generalized eigenproblem failed");
  const double required = pencil.eigenvalues()(n - 1);
  out.c_shift = std::max(0.0, required);
  INFSUP_THROW_IF(out.c_shift > kMaxGardingShift, ErrorCode::NoShiftFound,
                  "required shift " + std::to_string(out.c_shift) + " exceeds limit");
  return out;
}

}  // namespace infsup
