#pragma once

#include <cstddef>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

/// Relative rank threshold: a factorization is declared rank-deficient when
/// |R_ii| <= tol * max_j |R_jj|. The default separates exact column
/// dependence (ratios land near machine epsilon, ~1e-16 measured) from the
/// intentionally ill-conditioned inputs this library must solve, whose
/// smallest ratios sit around 5e-14.
inline constexpr double kDefaultRankTol = 1e-14;

/// Compact Householder QR of an m x n matrix, m >= n. Reflectors are stored
/// below the diagonal (unit head implicit) with coefficients in tau; R lives
/// in the upper triangle.
class QrFactors {
 public:
  std::size_t rows() const { return packed_.rows(); }
  std::size_t cols() const { return packed_.cols(); }

  /// Diagonal of R, reported so callers can detect rank deficiency.
  const std::vector<double>& r_diag() const { return r_diag_; }

  /// Upper-triangular n x n block of R.
  DenseMatrix r() const;

  /// Thin Q (m x n) with orthonormal columns, materialized from reflectors.
  DenseMatrix thin_q() const;

  /// Overwrites y with Q^T y (length m).
  void apply_qt(Vector& y) const;

  /// Solves R x = y[0:n] by back substitution, checking the diagonal against
  /// rank_tol * max |R_jj| first. Throws DegenerateRankError with the
  /// offending column index.
  Vector solve_upper(const Vector& y, double rank_tol) const;

 private:
  friend QrFactors householder_qr(const DenseMatrix& a);
  DenseMatrix packed_;
  std::vector<double> tau_;
  std::vector<double> r_diag_;
};

/// Householder QR factorization; requires rows >= cols and finite entries.
QrFactors householder_qr(const DenseMatrix& a);

/// Least-squares solution of min_x ||A x - b|| via Householder QR, never via
/// normal equations (the intended inputs have condition numbers up to ~1e15,
/// which would square). For full-rank A this is the pseudoinverse solution.
Vector solve_least_squares(const DenseMatrix& a, const Vector& b,
                           double rank_tol = kDefaultRankTol);

}  // namespace sketchls
