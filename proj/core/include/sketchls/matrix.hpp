#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sketchls {

/// Real vector. Entries are validated finite when constructed from data.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t len) : x_(len, 0.0) {}
  Vector(std::initializer_list<double> xs);

  /// Takes ownership of xs; rejects NaN/Inf entries.
  static Vector from(std::vector<double> xs);

  std::size_t size() const { return x_.size(); }
  double& operator[](std::size_t i) { return x_[i]; }
  double operator[](std::size_t i) const { return x_[i]; }
  double* data() { return x_.data(); }
  const double* data() const { return x_.data(); }
  const std::vector<double>& values() const { return x_; }

 private:
  std::vector<double> x_;
};

/// Dense real matrix in row-major order. Row-major is load-bearing: sketch
/// operators stream whole rows of the input.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);

  /// Takes ownership of data (row-major, length rows*cols); rejects NaN/Inf.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  const std::vector<double>& values() const { return data_; }

  Vector col(std::size_t j) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double euclidean_norm(const Vector& v);
double euclidean_norm(const double* x, std::size_t n);
double frobenius_norm(const DenseMatrix& a);

Vector matvec(const DenseMatrix& a, const Vector& x);

/// b - A*x.
Vector residual_vector(const DenseMatrix& a, const Vector& x, const Vector& b);

}  // namespace sketchls
