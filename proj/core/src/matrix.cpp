#include "sketchls/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "sketchls/errors.hpp"

namespace sketchls {

namespace {

void check_finite(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      throw DataError(std::string(what) + ": non-finite entry at index " +
                      std::to_string(i));
    }
  }
}

}  // namespace

Vector::Vector(std::initializer_list<double> xs) : x_(xs) {
  check_finite(x_, "Vector");
}

Vector Vector::from(std::vector<double> xs) {
  check_finite(xs, "Vector");
  Vector v;
  v.x_ = std::move(xs);
  return v;
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
  if (rows == 0 || cols == 0)
    throw DimensionError("DenseMatrix: zero dimension");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0)
    throw DimensionError("DenseMatrix: zero dimension");
  if (data_.size() != rows * cols)
    throw DimensionError("DenseMatrix: data length " +
                         std::to_string(data_.size()) + " != rows*cols " +
                         std::to_string(rows * cols));
  check_finite(data_, "DenseMatrix");
}

Vector DenseMatrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

double euclidean_norm(const double* x, std::size_t n) {
  // Scaled two-pass form so norms of 1e-10-scale columns do not underflow.
  double maxabs = 0.0;
  for (std::size_t i = 0; i < n; ++i) maxabs = std::max(maxabs, std::fabs(x[i]));
  if (maxabs == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i] / maxabs;
    sum += t * t;
  }
  return maxabs * std::sqrt(sum);
}

double euclidean_norm(const Vector& v) {
  return euclidean_norm(v.data(), v.size());
}

double frobenius_norm(const DenseMatrix& a) {
  return euclidean_norm(a.data(), a.rows() * a.cols());
}

Vector matvec(const DenseMatrix& a, const Vector& x) {
  if (x.size() != a.cols())
    throw DimensionError("matvec: length mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

Vector residual_vector(const DenseMatrix& a, const Vector& x,
                       const Vector& b) {
  if (b.size() != a.rows())
    throw DimensionError("residual_vector: rhs length mismatch");
  Vector r = matvec(a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace sketchls
