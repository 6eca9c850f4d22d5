#pragma once

// Saddle-point systems
//   a_hat(w, z) + b_hat(z, p) = f(z),   b_hat(w, q) = g(q)
// on W_n x Y_n, their block embedding into a single square form on W x Y, and the
// three Brezzi constants:
//   (i)   inf-sup of a_hat on the kernel W_0 = {w : b_hat(w, q) = 0 for all q},
//   (ii)  the same for the transposed form,
//   (iii) inf over p of sup over z of b_hat(z, p) / (||z|| ||p||).
// Matrix conventions follow DiscreteForm: a_hat(i, j) = a_hat(phi_j, phi_i) and
// b_hat(q, j) = b_hat(phi_j, chi_q).

#include <vector>

#include "infsup/linalg.hpp"

namespace infsup::saddle {

class SaddleSystem {
 public:
  SaddleSystem(Matrix a_hat, Matrix b_hat, GramMatrix gram_w, GramMatrix gram_y);
  /// Identity Grams.
  static SaddleSystem euclidean(Matrix a_hat, Matrix b_hat);

  [[nodiscard]] Index w_dim() const noexcept { return a_hat_.rows(); }
  [[nodiscard]] Index y_dim() const noexcept { return b_hat_.rows(); }
  [[nodiscard]] const Matrix& a_hat() const noexcept { return a_hat_; }
  [[nodiscard]] const Matrix& b_hat() const noexcept { return b_hat_; }
  [[nodiscard]] const GramMatrix& gram_w() const noexcept { return gram_w_; }
  [[nodiscard]] const GramMatrix& gram_y() const noexcept { return gram_y_; }
  /// max of the normalized operator norms of a_hat and b_hat.
  [[nodiscard]] double continuity() const;
  /// Same system with b_hat scaled by t.
  [[nodiscard]] SaddleSystem with_scaled_constraint(double t) const;

 private:
  Matrix a_hat_;
  Matrix b_hat_;
  GramMatrix gram_w_;
  GramMatrix gram_y_;
};

/// [[A, B^T], [B, 0]] with Gram diag(G_W, G_Y).
DiscreteForm block_embed(const SaddleSystem& sys);

inline constexpr double kKernelRankTolerance = 1e-10;

struct BrezziConstants {
  double beta_i = 0.0;
  double beta_ii = 0.0;
  double beta_iii = 0.0;
  Index kernel_dim = 0;
  /// Conditions (i) and (ii) are vacuous; beta_i and beta_ii are +inf.
  bool empty_kernel = false;
  /// G_W-orthonormal kernel basis in coefficients.
  Matrix kernel_basis;
};

BrezziConstants brezzi_constants(const SaddleSystem& sys);

struct MixedSolution {
  Vector w;
  Vector p;
  double residual_momentum = 0.0;    ///< max |A w + B^T p - f|
  double residual_constraint = 0.0;  ///< max |B w - g|
  double scale = 0.0;                ///< max(||A||, ||B||) (||w|| + ||p||) + ||f|| + ||g||
};

/// Throws SingularDiscreteProblem when the block form is singular.
MixedSolution mixed_solve(const SaddleSystem& sys, const Vector& f, const Vector& g);

inline constexpr double kEquivalenceTolerance = 1e-10;

struct EquivalenceReport {
  BrezziConstants brezzi;
  double global_beta = 0.0;
  bool brezzi_holds = false;  ///< min(beta_i, beta_iii) > tolerance
  bool bnb_holds = false;     ///< global_beta > tolerance
  [[nodiscard]] bool equivalent() const { return brezzi_holds == bnb_holds; }
};

EquivalenceReport brezzi_bnb_equivalence(const SaddleSystem& sys);

enum class Family { Stable, Unstable, FourierStokes };

/// Level n >= 1 of a built-in family.
///  Stable: W = R^{2n}, Y = R^n, b_hat = rows e_{2k}^T, a_hat = I plus a nilpotent
///    coupling from the kernel (odd) to the constrained (even) coordinates.
///  Unstable: the stable level n + 1 with one more pressure row 2^{-n} e_{2n+1}^T,
///    a spurious mode whose inf-sup constant halves per level.
///  FourierStokes: periodic Stokes on the torus with wavevectors 0 < |k|_inf <= n, one
///    real block per wavevector; W weight 1 + |k|^2, a_hat = |k|^2, b_hat = k^T.
SaddleSystem family_level(Family family, int n);

struct RefinementLevel {
  Index w_dim = 0;
  Index y_dim = 0;
  double error = 0.0;     ///< ||(w - w_n, p - p_n)|| in the block Gram
  double distance = 0.0;  ///< dist(w, W_n) + dist(p, Y_n)
  double constant = 0.0;  ///< error / distance, 0 when the distance vanishes
};

/// Coordinate-nested refinement of `finest`: level k uses the leading dims[k] of W and Y.
/// The reference solution solves the finest system for (f, g).
std::vector<RefinementLevel> refinement_study(const SaddleSystem& finest,
                                              const std::vector<std::pair<Index, Index>>& dims,
                                              const Vector& f, const Vector& g);

}  // namespace infsup::saddle
