#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>

#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"
#include "sketchls/sketch.hpp"
#include "test_util.hpp"

using namespace sketchls;
using testutil::matmul;
using testutil::max_abs_diff;
using testutil::max_abs_diff_identity;
using testutil::sylvester_hadamard;
using testutil::transpose;
using testutil::zero_pad_rows;

namespace {

DenseMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix a(m, n);
  for (std::size_t i = 0; i < m * n; ++i) a.data()[i] = rng.next_gaussian();
  return a;
}

// The structured constructions are seed-driven, so tests that need a specific
// permutation search a small seed range for it.
template <typename Pred>
std::optional<SketchOperator> find_seed(SketchKind kind, std::size_t s,
                                        std::size_t m, Pred&& pred,
                                        std::uint64_t limit = 100000) {
  for (std::uint64_t seed = 0; seed < limit; ++seed) {
    SketchOperator op = make_sketch(kind, s, m, seed);
    if (pred(op)) return op;
  }
  return std::nullopt;
}

double unit_unitarity_error(const SketchOperator& op) {
  const DenseMatrix f = op.as_dense();
  DenseMatrix g = matmul(f, transpose(f));
  const double inv = 1.0 / (op.scale() * op.scale());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= inv;
  return max_abs_diff_identity(g);
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (SketchKind kind : {SketchKind::kGaussian, SketchKind::kPermSubmatrix,
                          SketchKind::kBlockPerm, SketchKind::kAsph})
    CHECK(parse_kind(kind_name(kind)) == kind);
  CHECK(!parse_kind("hadamard").has_value());
}

TEST_CASE("perm submatrix with the identity permutation") {
  const auto op = find_seed(SketchKind::kPermSubmatrix, 2, 4, [](const auto& o) {
    return o.sampled_rows()[0] == 0 && o.sampled_rows()[1] == 1;
  });
  REQUIRE(op.has_value());
  const DenseMatrix f = op->as_dense();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(f(i, j) == (i == j ? 1.0 : 0.0));

  const DenseMatrix m_in = random_matrix(4, 3, 11);
  CostMeter meter;
  const DenseMatrix out = op->apply(m_in, meter);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(out(i, j) == m_in(i, j));
  CHECK(meter.entries_read == 6);
}

TEST_CASE("block permutation with the identity column permutation") {
  const auto op = find_seed(SketchKind::kBlockPerm, 2, 4, [](const auto& o) {
    const auto& p = o.column_perm();
    return p[0] == 0 && p[1] == 1 && p[2] == 2 && p[3] == 3;
  });
  REQUIRE(op.has_value());
  const double v = 1.0 / std::sqrt(2.0);
  const DenseMatrix f = op->as_dense();
  const double expect[2][4] = {{v, 0, v, 0}, {0, v, 0, v}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(f(i, j) == doctest::Approx(expect[i][j]).epsilon(1e-15));

  // Applied to a column of ones: paired sums give sqrt(2).
  DenseMatrix ones(4, 1, {1.0, 1.0, 1.0, 1.0});
  const DenseMatrix out = op->apply(ones);
  CHECK(out(0, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(out(1, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("asph at s=m=8 with trivial signs matches the Hadamard factor") {
  const auto op = find_seed(SketchKind::kAsph, 8, 8, [](const auto& o) {
    for (double sgn : o.sign_diagonal())
      if (sgn < 0) return false;
    return true;
  });
  REQUIRE(op.has_value());
  const DenseMatrix h8 = sylvester_hadamard(8);
  const DenseMatrix f = op->as_dense();
  const double inv = 1.0 / std::sqrt(8.0);
  // Row t of F is row sampled_rows()[t] of H_8 / sqrt(8); with m = 8 the
  // Kronecker block size is 1 and the row index is the H_8 row index.
  for (std::size_t t = 0; t < 8; ++t)
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(f(t, j) ==
            doctest::Approx(inv * h8(op->sampled_rows()[t], j)).epsilon(1e-15));
  CHECK(max_abs_diff_identity(matmul(f, transpose(f))) <= 1e-15);

  // First column of H_8 is all ones, so F e_1 has all entries +-1/sqrt(8).
  DenseMatrix e1(8, 1);
  e1(0, 0) = 1.0;
  const DenseMatrix out = op->apply(e1);
  double norm_sq = 0.0;
  for (std::size_t t = 0; t < 8; ++t) {
    CHECK(std::fabs(out(t, 0)) == doctest::Approx(inv).epsilon(1e-15));
    norm_sq += out(t, 0) * out(t, 0);
  }
  CHECK(std::sqrt(norm_sq) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hadamard popcount signs agree with the Sylvester recursion") {
  // The library indexes H_8 by (-1)^popcount(i & j); cross-check the whole
  // 8x8 block against the brute-force recursion via as_dense at m = 8.
  const SketchOperator op = make_sketch(SketchKind::kAsph, 8, 8, 12345);
  const DenseMatrix h8 = sylvester_hadamard(8);
  const DenseMatrix f = op.as_dense();
  const double inv = 1.0 / std::sqrt(8.0);
  for (std::size_t t = 0; t < 8; ++t) {
    const std::size_t r = op.sampled_rows()[t];
    for (std::size_t j = 0; j < 8; ++j)
      CHECK(f(t, j) == doctest::Approx(inv * h8(r, j) * op.sign_diagonal()[j])
                           .epsilon(1e-15));
  }
}

TEST_CASE("apply equals dense multiply for every kind, padding included") {
  struct Case { std::size_t s, m, cols; };
  const Case cases[] = {{4, 16, 3}, {3, 10, 5}, {5, 37, 2}, {8, 8, 1}};
  for (SketchKind kind : {SketchKind::kGaussian, SketchKind::kPermSubmatrix,
                          SketchKind::kBlockPerm, SketchKind::kAsph}) {
    for (const Case& c : cases) {
      const SketchOperator op = make_sketch(kind, c.s, c.m, 314 + c.m);
      const DenseMatrix m_in = random_matrix(c.m, c.cols, 42 + c.m);
      const DenseMatrix via_apply = op.apply(m_in);
      const DenseMatrix via_dense =
          matmul(op.as_dense(), zero_pad_rows(m_in, op.m_padded()));
      CHECK(max_abs_diff(via_apply, via_dense) <= 1e-12);
    }
  }
}

TEST_CASE("scaled unitarity across 100 seeds") {
  struct Case { std::size_t s, m; };
  for (SketchKind kind : {SketchKind::kPermSubmatrix, SketchKind::kBlockPerm,
                          SketchKind::kAsph}) {
    for (const Case& c : {Case{8, 64}, Case{16, 128}}) {
      for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SketchOperator op = make_sketch(kind, c.s, c.m, seed);
        CHECK(unit_unitarity_error(op) <= 1e-12);
        CHECK(unit_unitarity_error(op.with_scale(7.3)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("cost contracts on random shapes") {
  Rng shapes(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t s = 2 + shapes.next_index(14);
    const std::size_t m = s + 1 + shapes.next_index(120);
    const std::size_t cols = 1 + shapes.next_index(6);
    const DenseMatrix m_in = random_matrix(m, cols, 5000 + trial);
    CostMeter meter;

    const SketchOperator perm =
        make_sketch(SketchKind::kPermSubmatrix, s, m, trial);
    perm.apply(m_in, meter);
    CHECK(meter.entries_read == s * cols);

    const SketchOperator block = make_sketch(SketchKind::kBlockPerm, s, m, trial);
    block.apply(m_in, meter);
    CHECK(meter.scalar_ops() <= 9 * (s + block.m_padded()) * cols);
    CHECK(meter.entries_read == m * cols);  // every real row read once

    const SketchOperator asph = make_sketch(SketchKind::kAsph, s, m, trial);
    asph.apply(m_in, meter);
    CHECK(meter.scalar_ops() <= 9 * (s + asph.m_padded()) * cols);
    CHECK(meter.entries_read <= 8 * s * cols);  // reads count multiplicity

    const SketchOperator gauss = make_sketch(SketchKind::kGaussian, s, m, trial);
    gauss.apply(m_in, meter);
    CHECK(meter.multiplies > s * m * cols);
  }
}

TEST_CASE("nnz per kind") {
  CHECK(make_sketch(SketchKind::kPermSubmatrix, 5, 40, 1).nnz() == 5);
  CHECK(make_sketch(SketchKind::kBlockPerm, 5, 40, 1).nnz() == 40);
  CHECK(make_sketch(SketchKind::kBlockPerm, 6, 40, 1).nnz() == 42);  // padded
  CHECK(make_sketch(SketchKind::kAsph, 5, 40, 1).nnz() == 40);
  CHECK(make_sketch(SketchKind::kGaussian, 5, 40, 1).nnz() == 200);
}

TEST_CASE("gaussian entries have variance near 1/s") {
  const std::size_t s = 50, m = 4000;  // 200k entries
  const SketchOperator op = make_sketch(SketchKind::kGaussian, s, m, 9);
  const DenseMatrix f = op.as_dense();
  double sum = 0.0, sum_sq = 0.0;
  const std::size_t n = s * m;
  for (std::size_t i = 0; i < n; ++i) {
    sum += f.data()[i];
    sum_sq += f.data()[i] * f.data()[i];
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  CHECK(std::fabs(var - 1.0 / static_cast<double>(s)) <=
        0.1 / static_cast<double>(s));
}

TEST_CASE("row-sampled Gaussian input stays Gaussian") {
  // Unscaled perm rows of a standard Gaussian 4096x4 sample: the 2048
  // surviving entries should still look standard normal.
  const DenseMatrix m_in = random_matrix(4096, 4, 1234);
  const SketchOperator op =
      make_sketch(SketchKind::kPermSubmatrix, 512, 4096, 77);
  const DenseMatrix fm = op.apply(m_in);
  const std::size_t n = 512 * 4;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += fm.data()[i];
    sum_sq += fm.data()[i] * fm.data()[i];
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  CHECK(std::fabs(mean) <= 4.0 / std::sqrt(2048.0));
  CHECK(std::fabs(var - 1.0) <= 0.15);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(make_sketch(SketchKind::kPermSubmatrix, 5, 4, 1),
                  DimensionError);
  CHECK_THROWS_AS(make_sketch(SketchKind::kGaussian, 0, 4, 1), DimensionError);
  CHECK_THROWS_AS(make_sketch(SketchKind::kAsph, 1, 0, 1), DimensionError);
  const SketchOperator op = make_sketch(SketchKind::kPermSubmatrix, 2, 8, 1);
  CHECK_THROWS_AS(op.apply(DenseMatrix(7, 2)), DimensionError);
  CHECK_THROWS_AS(make_sketch(SketchKind::kGaussian, 800, 2000, 1).as_dense(),
                  DimensionError);
}

TEST_CASE("operators are deterministic per seed") {
  for (SketchKind kind : {SketchKind::kGaussian, SketchKind::kPermSubmatrix,
                          SketchKind::kBlockPerm, SketchKind::kAsph}) {
    const DenseMatrix a = make_sketch(kind, 6, 48, 5).as_dense();
    const DenseMatrix b = make_sketch(kind, 6, 48, 5).as_dense();
    const DenseMatrix c = make_sketch(kind, 6, 48, 6).as_dense();
    CHECK(max_abs_diff(a, b) == 0.0);
    CHECK(max_abs_diff(a, c) > 0.0);
  }
}
