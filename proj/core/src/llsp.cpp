#include "sketchls/llsp.hpp"

#include <limits>
#include <string>
#include <utility>

#include "sketchls/errors.hpp"

namespace sketchls {

LlspProblem LlspProblem::create(DenseMatrix a, Vector b) {
  const std::size_t m = a.rows();
  const std::size_t d = a.cols();
  if (!(d >= 1 && d < m))
    throw DimensionError("LlspProblem: need 1 <= d < m, got m=" +
                         std::to_string(m) + " d=" + std::to_string(d));
  if (b.size() != m)
    throw DimensionError("LlspProblem: rhs length " + std::to_string(b.size()) +
                         " != m " + std::to_string(m));

  LlspProblem p;
  p.augmented_ = DenseMatrix(m, d + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double* src = a.row(i);
    double* dst = p.augmented_.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j];
    dst[d] = b[i];
  }
  p.a_ = std::move(a);
  p.b_ = std::move(b);
  return p;
}

Solution solve_exact(const LlspProblem& p, double rank_tol) {
  Solution sol;
  sol.x = solve_least_squares(p.a(), p.b(), rank_tol);
  sol.residual = euclidean_norm(residual_vector(p.a(), sol.x, p.b()));
  sol.relative_residual = 1.0;
  return sol;
}

Solution sketch_and_solve(const LlspProblem& p, const SketchOperator& op,
                          const Solution* exact, CostMeter* meter,
                          double rank_tol) {
  if (op.m() != p.m())
    throw DimensionError("sketch_and_solve: operator expects m=" +
                         std::to_string(op.m()) + ", problem has m=" +
                         std::to_string(p.m()));
  const std::size_t d = p.d();
  if (op.s() < d)
    throw DimensionError(
        "sketch_and_solve: s=" + std::to_string(op.s()) + " < d=" +
        std::to_string(d) + ", reduced problem is underdetermined");

  CostMeter local;
  CostMeter& meter_ref = meter ? *meter : local;
  const DenseMatrix fm = op.apply(p.augmented(), meter_ref);

  // Split F(A|b) into the reduced pair (FA, Fb).
  const std::size_t s = op.s();
  DenseMatrix fa(s, d);
  Vector fb(s);
  for (std::size_t i = 0; i < s; ++i) {
    const double* src = fm.row(i);
    double* dst = fa.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j];
    fb[i] = src[d];
  }

  Solution sol;
  try {
    sol.x = solve_least_squares(fa, fb, rank_tol);
  } catch (const DegenerateRankError& e) {
    throw DegenerateRankError(e.column(), e.r_value(), e.threshold(),
                              "reduced problem, kind=" +
                                  std::string(kind_name(op.kind())) +
                                  " seed=" + std::to_string(op.seed()));
  }
  sol.residual = euclidean_norm(residual_vector(p.a(), sol.x, p.b()));
  if (exact) sol.relative_residual = relative_residual(p, sol.x, *exact);

  SketchMeta meta;
  meta.kind = op.kind();
  meta.s = s;
  meta.h = s % d == 0 ? s / d : 0;
  meta.seed = op.seed();
  meta.cost = meter_ref;
  meta.underdetermined_warning = s < d + 1;
  sol.sketch_meta = meta;
  return sol;
}

double relative_residual(const LlspProblem& p, const Vector& x,
                         const Solution& exact) {
  const double num = euclidean_norm(residual_vector(p.a(), x, p.b()));
  const double b_norm = euclidean_norm(p.b());
  if (exact.residual <= 1e-12 * b_norm) {
    // Consistent system: the minimum is (numerically) zero and the ratio is
    // not informative. x either also solves the system, or it does not.
    return num <= 1e-12 * b_norm ? 1.0
                                 : std::numeric_limits<double>::infinity();
  }
  return num / exact.residual;
}

}  // namespace sketchls
