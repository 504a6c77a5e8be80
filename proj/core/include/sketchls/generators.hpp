#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

/// Prescribed singular spectrum for the ill-conditioned input family.
struct IllCondSpectrum {
  std::vector<double> sigma;  // nonincreasing, positive

  /// sigma_j = 10^(5-j) for j = 1..14 and 10^-10 beyond, truncated to d.
  static IllCondSpectrum standard(std::size_t d);
};

/// Right-hand-side recipe: b = Aw/||Aw|| + (noise_scale/||v||) v with
/// Gaussian w, v, so b is in the range of A up to a noise_scale term.
struct RhsRecipe {
  double noise_scale = 0.001;
};

/// m x d i.i.d. standard normal entries, deterministic per seed. d < m.
DenseMatrix gen_gaussian_input(std::size_t m, std::size_t d,
                               std::uint64_t seed);

/// Thin m x d matrix with orthonormal columns: the Q factor of a Gaussian
/// matrix. d <= m.
DenseMatrix random_orthonormal(std::size_t m, std::size_t d,
                               std::uint64_t seed);

/// A = U diag(sigma) V^T with U (m x d) and V (d x d) random orthonormal.
/// Composes factors; never decomposes.
DenseMatrix gen_illcond_input(std::size_t m, std::size_t d,
                              const IllCondSpectrum& spectrum,
                              std::uint64_t seed);

/// Breakdown of a generated right-hand side, for tests that need the pieces.
struct RhsParts {
  Vector b;
  Vector in_range_unit;  // Aw / ||Aw||
  Vector noise;          // (noise_scale / ||v||) v
  std::size_t resamples = 0;
};

RhsParts gen_rhs_detailed(const DenseMatrix& a, const RhsRecipe& recipe,
                          std::uint64_t seed);
Vector gen_rhs(const DenseMatrix& a, const RhsRecipe& recipe,
               std::uint64_t seed);

}  // namespace sketchls
