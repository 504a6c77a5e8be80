// Microbenchmarks for the sketching kernels and solvers.
//
//   cmake --build build --target sketchls_bench
//   ./build/benchmarks/sketchls_bench --benchmark_filter=Apply

#include <benchmark/benchmark.h>

#include "sketchls/generators.hpp"
#include "sketchls/llsp.hpp"
#include "sketchls/qr.hpp"
#include "sketchls/sketch.hpp"

namespace {

using namespace sketchls;

constexpr std::size_t kRows = 4096;
constexpr std::size_t kCols = 50;

SketchKind kind_of(std::int64_t tag) {
  switch (tag) {
    case 0: return SketchKind::kGaussian;
    case 1: return SketchKind::kPermSubmatrix;
    case 2: return SketchKind::kBlockPerm;
    default: return SketchKind::kAsph;
  }
}

const LlspProblem& paper_problem() {
  static const LlspProblem p = [] {
    DenseMatrix a = gen_gaussian_input(kRows, kCols, 1);
    Vector b = gen_rhs(a, RhsRecipe{}, 2);
    return LlspProblem::create(std::move(a), std::move(b));
  }();
  return p;
}

void BM_MakeSketch(benchmark::State& state) {
  const SketchKind kind = kind_of(state.range(0));
  const std::size_t s = kCols * static_cast<std::size_t>(state.range(1));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_sketch(kind, s, kRows, seed++));
  }
}
BENCHMARK(BM_MakeSketch)
    ->ArgsProduct({{0, 1, 2, 3}, {2, 6}})
    ->ArgNames({"kind", "h"});

void BM_Apply(benchmark::State& state) {
  const SketchKind kind = kind_of(state.range(0));
  const std::size_t s = kCols * static_cast<std::size_t>(state.range(1));
  const SketchOperator op = make_sketch(kind, s, kRows, 7);
  const DenseMatrix& m_in = paper_problem().augmented();
  CostMeter meter;
  for (auto _ : state) {
    benchmark::DoNotOptimize(op.apply(m_in, meter));
  }
  state.counters["entries_read"] = static_cast<double>(meter.entries_read);
  state.counters["scalar_ops"] = static_cast<double>(meter.scalar_ops());
}
BENCHMARK(BM_Apply)
    ->ArgsProduct({{0, 1, 2, 3}, {2, 6}})
    ->ArgNames({"kind", "h"});

void BM_HouseholderQr(benchmark::State& state) {
  const DenseMatrix& a = paper_problem().a();
  for (auto _ : state) {
    benchmark::DoNotOptimize(householder_qr(a));
  }
}
BENCHMARK(BM_HouseholderQr);

void BM_SolveExact(benchmark::State& state) {
  const LlspProblem& p = paper_problem();
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(p));
  }
}
BENCHMARK(BM_SolveExact);

void BM_SketchAndSolve(benchmark::State& state) {
  const SketchKind kind = kind_of(state.range(0));
  const LlspProblem& p = paper_problem();
  const std::size_t s = kCols * 6;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const SketchOperator op = make_sketch(kind, s, kRows, seed++);
    benchmark::DoNotOptimize(sketch_and_solve(p, op));
  }
}
BENCHMARK(BM_SketchAndSolve)->DenseRange(0, 3)->ArgName("kind");

}  // namespace

BENCHMARK_MAIN();
