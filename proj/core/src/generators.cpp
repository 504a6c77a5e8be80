#include "sketchls/generators.hpp"

#include <cmath>
#include <string>

#include "sketchls/errors.hpp"
#include "sketchls/qr.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

IllCondSpectrum IllCondSpectrum::standard(std::size_t d) {
  IllCondSpectrum sp;
  sp.sigma.resize(d);
  for (std::size_t j = 1; j <= d; ++j)
    sp.sigma[j - 1] = j <= 14 ? std::pow(10.0, 5.0 - static_cast<double>(j))
                              : 1e-10;
  return sp;
}

DenseMatrix gen_gaussian_input(std::size_t m, std::size_t d,
                               std::uint64_t seed) {
  if (d >= m)
    throw DimensionError("gen_gaussian_input: need d < m");
  Rng rng(seed);
  DenseMatrix a(m, d);
  for (std::size_t i = 0; i < m * d; ++i) a.data()[i] = rng.next_gaussian();
  return a;
}

DenseMatrix random_orthonormal(std::size_t m, std::size_t d,
                               std::uint64_t seed) {
  if (d > m)
    throw DimensionError("random_orthonormal: need d <= m");
  Rng rng(seed);
  DenseMatrix g(m, d);
  for (std::size_t i = 0; i < m * d; ++i) g.data()[i] = rng.next_gaussian();
  return householder_qr(g).thin_q();
}

DenseMatrix gen_illcond_input(std::size_t m, std::size_t d,
                              const IllCondSpectrum& spectrum,
                              std::uint64_t seed) {
  if (d >= m)
    throw DimensionError("gen_illcond_input: need d < m");
  if (spectrum.sigma.size() != d)
    throw DimensionError("gen_illcond_input: spectrum length " +
                         std::to_string(spectrum.sigma.size()) + " != d " +
                         std::to_string(d));
  for (std::size_t j = 0; j < d; ++j) {
    if (!(spectrum.sigma[j] > 0.0))
      throw DataError("gen_illcond_input: spectrum must be positive");
    if (j > 0 && spectrum.sigma[j] > spectrum.sigma[j - 1])
      throw DataError("gen_illcond_input: spectrum must be nonincreasing");
  }

  const DenseMatrix u = random_orthonormal(m, d, derive_seed(seed, 1));
  const DenseMatrix v = random_orthonormal(d, d, derive_seed(seed, 2));

  // A = U diag(sigma) V^T, built as (U * diag(sigma)) * V^T.
  DenseMatrix a(m, d);
  for (std::size_t i = 0; i < m; ++i) {
    const double* urow = u.row(i);
    double* arow = a.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d; ++k)
        acc += urow[k] * spectrum.sigma[k] * v(j, k);
      arow[j] = acc;
    }
  }
  return a;
}

RhsParts gen_rhs_detailed(const DenseMatrix& a, const RhsRecipe& recipe,
                          std::uint64_t seed) {
  if (!(recipe.noise_scale > 0.0))
    throw DataError("gen_rhs: noise_scale must be positive");
  if (frobenius_norm(a) == 0.0)
    throw DataError("gen_rhs: input matrix is zero");
  const std::size_t m = a.rows();
  const std::size_t d = a.cols();
  Rng rng(seed);

  RhsParts parts;
  Vector aw;
  double aw_norm = 0.0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Vector w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = rng.next_gaussian();
    aw = matvec(a, w);
    aw_norm = euclidean_norm(aw);
    if (aw_norm > 0.0) break;
    ++parts.resamples;
  }
  if (aw_norm == 0.0)
    throw DataError("gen_rhs: A w vanished repeatedly");

  Vector v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = rng.next_gaussian();
  const double v_norm = euclidean_norm(v);

  parts.in_range_unit = Vector(m);
  parts.noise = Vector(m);
  parts.b = Vector(m);
  for (std::size_t i = 0; i < m; ++i) {
    parts.in_range_unit[i] = aw[i] / aw_norm;
    parts.noise[i] = recipe.noise_scale * v[i] / v_norm;
    parts.b[i] = parts.in_range_unit[i] + parts.noise[i];
  }
  return parts;
}

Vector gen_rhs(const DenseMatrix& a, const RhsRecipe& recipe,
               std::uint64_t seed) {
  return gen_rhs_detailed(a, recipe, seed).b;
}

}  // namespace sketchls
