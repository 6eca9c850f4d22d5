#pragma once

// The alternating form a(u, v) = sum_k (-1)^k u_k v_k on a truncation of l^2: invertible
// with every normalized singular value 1, coercivity constant 0, and a(f_n, f_n) = 0 for
// the pair vectors f_n = e_{2n} + e_{2n+1}. Augmenting coordinate spaces with these
// isotropic directions gives an approximating family on which Galerkin fails.

#include <cstdint>
#include <optional>
#include <vector>

#include "infsup/galerkin.hpp"

namespace infsup::counterexamples {

/// diag(+1, -1, +1, ...) of even size >= 2 with identity Grams.
DiscreteForm alternating_form(Index size);

/// e_{2n} + e_{2n+1}; throws IndexOutOfRange unless 2n + 1 < size.
Vector pair_vector(Index n, Index size);

/// Levels n = 1..levels spanning {e_0, ..., e_{n-1}, f_n / sqrt(2)} on both sides.
/// Not nested. Throws SizeTooSmall unless size >= 2 levels + 2.
NestedSpaceFamily adversarial_family(int levels, Index size);

/// Levels n = 1..levels spanning {e_0, ..., e_n}: the same dimensions without augmentation.
NestedSpaceFamily coordinate_family(int levels, Index size);

/// Levels spanning the first d_n columns of a random orthogonal matrix, d_n = n + 1.
NestedSpaceFamily random_nested_family(int levels, Index size, std::uint64_t seed);

struct UnboundedRow {
  int n = 0;
  double beta = 0.0;        ///< coordinate level of the same dimension
  double beta_tilde = 0.0;  ///< regularized adversarial level
  double epsilon = 0.0;
  double solution_norm = 0.0;
  double growth = 0.0;  ///< ratio to the previous level, 0 on the first
};

/// Regularized adversarial levels: the zero pivot a(u_n, u_n) becomes eps_n = rate^{-n}.
/// The functional L = <., f_bar> with f_bar = sum_j 2^{-j} u_j is fixed across levels, so
/// the augmented coefficient of u_n is 2^{-n} / eps_n.
std::vector<UnboundedRow> unbounded_discrete_solutions(int levels, double rate = 4.0);

/// G-unit u in the G-orthogonal complement of range(sub) with a(u, u) = 0, built from the
/// extreme eigenvectors of the compressed symmetric part. Empty when that compression is
/// definite (no isotropic direction exists there).
std::optional<Vector> isotropic_witness(const DiscreteForm& form, const Matrix& sub);

/// Levels n = 1..levels spanning {e_0..e_{n-1}} plus an isotropic witness from the
/// complement of {e_0..e_{2n-1}}, when one exists (otherwise e_n is used).
NestedSpaceFamily witness_family(const DiscreteForm& form, int levels);

}  // namespace infsup::counterexamples
