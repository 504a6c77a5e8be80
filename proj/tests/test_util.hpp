#pragma once

// Shared helpers for the test suite. The matrix routines here are
// deliberately naive triple loops, independent of the library's apply/solve
// paths, so they can serve as oracles for them.

#include <cmath>
#include <cstddef>
#include <vector>

#include "sketchls/matrix.hpp"

namespace testutil {

inline sketchls::DenseMatrix matmul(const sketchls::DenseMatrix& a,
                                    const sketchls::DenseMatrix& b) {
  sketchls::DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

inline sketchls::DenseMatrix transpose(const sketchls::DenseMatrix& a) {
  sketchls::DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

inline sketchls::DenseMatrix zero_pad_rows(const sketchls::DenseMatrix& a,
                                           std::size_t rows) {
  sketchls::DenseMatrix out(rows, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

inline double max_abs_diff(const sketchls::DenseMatrix& a,
                           const sketchls::DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::fabs(a(i, j) - b(i, j)));
  return worst;
}

inline double max_abs_diff_identity(const sketchls::DenseMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(a(i, j) - expect));
    }
  return worst;
}

// Sylvester recursion: H_1 = [1], H_2n = [[H, H], [H, -H]].
inline sketchls::DenseMatrix sylvester_hadamard(std::size_t n) {
  sketchls::DenseMatrix h(1, 1);
  h(0, 0) = 1.0;
  for (std::size_t size = 1; size < n; size *= 2) {
    sketchls::DenseMatrix next(2 * size, 2 * size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        next(i, j) = h(i, j);
        next(i, j + size) = h(i, j);
        next(i + size, j) = h(i, j);
        next(i + size, j + size) = -h(i, j);
      }
    h = std::move(next);
  }
  return h;
}

}  // namespace testutil
