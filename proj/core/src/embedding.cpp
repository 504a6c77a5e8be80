#include "sketchls/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

EmbeddingReport check_embedding(const SketchOperator& op,
                                const DenseMatrix& m_in, double epsilon,
                                std::size_t probes, std::uint64_t seed,
                                double gamma_target) {
  if (probes == 0)
    throw DimensionError("check_embedding: need at least one probe");
  if (m_in.rows() != op.m())
    throw DimensionError("check_embedding: input rows != operator m");
  if (frobenius_norm(m_in) == 0.0)
    throw DataError("check_embedding: input matrix is zero");

  const double s = static_cast<double>(op.s());
  const double m = static_cast<double>(op.m());
  // kappa normalizes the expected ratio to 1. A Gaussian operator's N(0,1/s)
  // entries already make ||F w|| track ||w||, so only the free scale is
  // undone; a scaled-unitary operator keeps s of m rows' worth of a Gaussian
  // input's energy and needs the sqrt(s/m) correction on top.
  const double kappa = op.kind() == SketchKind::kGaussian
                           ? op.scale()
                           : op.scale() * std::sqrt(s / m);

  const DenseMatrix fm = op.apply(m_in);
  const std::size_t cols = m_in.cols();

  EmbeddingReport rep;
  rep.epsilon_target = epsilon;
  rep.gamma_target = gamma_target;
  rep.probes = probes;
  rep.scale_correction = kappa;
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;

  Rng rng(derive_seed(seed, 0x70726f6265ULL));  // "probe"
  double sum = 0.0, comp = 0.0;
  std::size_t violations = 0;

  for (std::size_t pidx = 0; pidx < probes; ++pidx) {
    Vector y(cols);
    double ny = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      for (std::size_t j = 0; j < cols; ++j) y[j] = rng.next_gaussian();
      ny = euclidean_norm(matvec(m_in, y));
      if (ny > 0.0) break;
      ++rep.resamples;
    }
    if (ny == 0.0)
      throw DataError("check_embedding: probe repeatedly landed in the null "
                      "space of the input");

    const double ratio = euclidean_norm(matvec(fm, y)) / (kappa * ny);
    rep.ratio_min = std::min(rep.ratio_min, ratio);
    rep.ratio_max = std::max(rep.ratio_max, ratio);
    const double t = ratio - comp;
    const double next = sum + t;
    comp = (next - sum) - t;
    sum = next;
    if (ratio < 1.0 - epsilon || ratio > 1.0 + epsilon) ++violations;
  }

  rep.ratio_mean = sum / static_cast<double>(probes);
  rep.violation_fraction =
      static_cast<double>(violations) / static_cast<double>(probes);
  return rep;
}

}  // namespace sketchls
