#pragma once

#include <cstddef>
#include <cstdint>

#include "sketchls/matrix.hpp"
#include "sketchls/sketch.hpp"

namespace sketchls {

/// Result of probing an operator's subspace-embedding quality on a concrete
/// input matrix M: the distribution of ||F M y|| / (kappa ||M y||) over
/// random Gaussian probes y, where kappa normalizes the expected ratio to 1
/// (recorded in scale_correction).
struct EmbeddingReport {
  double epsilon_target = 0.0;
  double gamma_target = 0.0;
  std::size_t probes = 0;
  double ratio_min = 0.0;
  double ratio_mean = 0.0;
  double ratio_max = 0.0;
  double violation_fraction = 0.0;  // probes outside [1-eps, 1+eps] / probes
  std::size_t resamples = 0;        // probes redrawn because ||M y|| was zero
  double scale_correction = 1.0;    // the kappa used
};

/// Draws `probes` Gaussian vectors y of length m_in.cols() and reports the
/// observed ratio statistics for the given epsilon. kappa is scale for the
/// Gaussian kind (whose N(0,1/s) entries already preserve norms on average)
/// and scale * sqrt(s / m) for the scaled-unitary kinds, making a
/// well-behaved operator produce ratios near 1. A square unitary operator
/// gives ratios exactly 1.
EmbeddingReport check_embedding(const SketchOperator& op,
                                const DenseMatrix& m_in, double epsilon,
                                std::size_t probes, std::uint64_t seed,
                                double gamma_target = 0.1);

}  // namespace sketchls
