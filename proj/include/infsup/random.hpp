#pragma once

// Seeded generators for randomized property suites. All randomness flows from
// one 64-bit seed through mt19937_64; the uniform and normal transforms are
// implemented here so sequences do not depend on the standard library vendor.

#include <cstdint>
#include <random>

#include "infsup/linalg.hpp"

namespace infsup {

inline constexpr std::uint64_t kDefaultSeed = 0xA11CE;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  /// Standard normal (Box-Muller).
  double normal();

  Vector normal_vector(Index n);
  Matrix normal_matrix(Index rows, Index cols);
  /// Q R with Q Haar-distributed orthogonal.
  Matrix orthogonal(Index n);
  /// Random SPD matrix with condition number at most `max_condition`.
  Matrix spd(Index n, double max_condition = 100.0);
  /// Random invertible matrix with singular values in [1, max_condition].
  Matrix invertible(Index n, double max_condition = 10.0);
  /// Unit vector in the G-norm.
  Vector unit_vector(const GramMatrix& g);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace infsup
