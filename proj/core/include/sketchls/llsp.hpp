#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sketchls/matrix.hpp"
#include "sketchls/qr.hpp"
#include "sketchls/sketch.hpp"

namespace sketchls {

/// Overdetermined least-squares instance: A (m x d, 1 <= d < m), right-hand
/// side b, and the cached augmented matrix M = (A | b) that the sketch
/// operators consume.
class LlspProblem {
 public:
  static LlspProblem create(DenseMatrix a, Vector b);

  const DenseMatrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  const DenseMatrix& augmented() const { return augmented_; }
  std::size_t m() const { return a_.rows(); }
  std::size_t d() const { return a_.cols(); }

 private:
  DenseMatrix a_;
  Vector b_;
  DenseMatrix augmented_;
};

struct SketchMeta {
  SketchKind kind;
  std::size_t s = 0;
  std::size_t h = 0;  // s/d when s is a multiple of d, 0 otherwise
  std::uint64_t seed = 0;
  CostMeter cost;
  bool underdetermined_warning = false;  // set when s < d+1
};

struct Solution {
  Vector x;
  double residual = 0.0;  // ||A x - b|| on the original problem
  std::optional<double> relative_residual;
  std::optional<SketchMeta> sketch_meta;
};

/// Exact solution via QR on the full m x d matrix. relative_residual is 1 by
/// definition.
Solution solve_exact(const LlspProblem& p, double rank_tol = kDefaultRankTol);

/// Sketch-and-solve: form F*M, split off the reduced problem
/// min_u ||(FA) u - Fb||, solve it by QR, and evaluate the returned x on the
/// ORIGINAL A, b. When `exact` is supplied the relative residual against it
/// is filled in. The reduced solve is done on the (FA, Fb) split; this is the
/// augmented formulation restricted to v = (x, -1).
Solution sketch_and_solve(const LlspProblem& p, const SketchOperator& op,
                          const Solution* exact = nullptr,
                          CostMeter* meter = nullptr,
                          double rank_tol = kDefaultRankTol);

/// ||A x - b|| / exact.residual, >= 1 - 1e-9 for any x. When the exact
/// residual is (numerically) zero the ratio is defined as 1 if x also solves
/// the system to 1e-12 * ||b||, and +infinity otherwise (consistent-system
/// degenerate case).
double relative_residual(const LlspProblem& p, const Vector& x,
                         const Solution& exact);

}  // namespace sketchls
