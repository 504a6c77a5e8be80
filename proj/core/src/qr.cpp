#include "sketchls/qr.hpp"

#include <cmath>
#include <string>

#include "sketchls/errors.hpp"

namespace sketchls {

namespace {

double column_norm_below(const DenseMatrix& a, std::size_t from,
                         std::size_t k) {
  double maxabs = 0.0;
  for (std::size_t i = from; i < a.rows(); ++i)
    maxabs = std::max(maxabs, std::fabs(a(i, k)));
  if (maxabs == 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = from; i < a.rows(); ++i) {
    const double t = a(i, k) / maxabs;
    sum += t * t;
  }
  return maxabs * std::sqrt(sum);
}

}  // namespace

QrFactors householder_qr(const DenseMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n)
    throw DimensionError("householder_qr: rows (" + std::to_string(m) +
                         ") < cols (" + std::to_string(n) + ")");

  QrFactors f;
  f.packed_ = a;
  f.tau_.assign(n, 0.0);
  f.r_diag_.assign(n, 0.0);
  DenseMatrix& p = f.packed_;

  for (std::size_t k = 0; k < n; ++k) {
    const double tail = column_norm_below(p, k + 1, k);
    if (tail == 0.0) {
      // Nothing to annihilate: H_k = I and R_kk is the diagonal entry as-is
      // (zero when the whole column collapsed, which the rank check catches).
      f.tau_[k] = 0.0;
      f.r_diag_[k] = p(k, k);
      continue;
    }
    const double norm = column_norm_below(p, k, k);
    const double x0 = p(k, k);
    const double beta = x0 >= 0.0 ? -norm : norm;  // avoids cancellation
    const double tau = (beta - x0) / beta;
    const double inv = 1.0 / (x0 - beta);
    for (std::size_t i = k + 1; i < m; ++i) p(i, k) *= inv;
    p(k, k) = beta;
    f.tau_[k] = tau;
    f.r_diag_[k] = beta;

    for (std::size_t j = k + 1; j < n; ++j) {
      double w = p(k, j);
      for (std::size_t i = k + 1; i < m; ++i) w += p(i, k) * p(i, j);
      w *= tau;
      p(k, j) -= w;
      for (std::size_t i = k + 1; i < m; ++i) p(i, j) -= w * p(i, k);
    }
  }
  return f;
}

DenseMatrix QrFactors::r() const {
  const std::size_t n = cols();
  DenseMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) r(i, j) = packed_(i, j);
  return r;
}

void QrFactors::apply_qt(Vector& y) const {
  const std::size_t m = rows();
  const std::size_t n = cols();
  if (y.size() != m) throw DimensionError("apply_qt: length mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    if (tau_[k] == 0.0) continue;
    double w = y[k];
    for (std::size_t i = k + 1; i < m; ++i) w += packed_(i, k) * y[i];
    w *= tau_[k];
    y[k] -= w;
    for (std::size_t i = k + 1; i < m; ++i) y[i] -= w * packed_(i, k);
  }
}

DenseMatrix QrFactors::thin_q() const {
  const std::size_t m = rows();
  const std::size_t n = cols();
  DenseMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    // Apply H_k in reverse order to e_j.
    Vector e(m);
    e[j] = 1.0;
    for (std::size_t kk = n; kk-- > 0;) {
      if (tau_[kk] == 0.0) continue;
      double w = e[kk];
      for (std::size_t i = kk + 1; i < m; ++i) w += packed_(i, kk) * e[i];
      w *= tau_[kk];
      e[kk] -= w;
      for (std::size_t i = kk + 1; i < m; ++i) e[i] -= w * packed_(i, kk);
    }
    for (std::size_t i = 0; i < m; ++i) q(i, j) = e[i];
  }
  return q;
}

Vector QrFactors::solve_upper(const Vector& y, double rank_tol) const {
  const std::size_t n = cols();
  double maxdiag = 0.0;
  for (double d : r_diag_) maxdiag = std::max(maxdiag, std::fabs(d));
  const double threshold = rank_tol * maxdiag;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = std::fabs(r_diag_[k]);
    if (d <= threshold || d == 0.0)
      throw DegenerateRankError(k, d, threshold);
  }

  Vector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= packed_(ii, j) * x[j];
    x[ii] = acc / packed_(ii, ii);
  }
  return x;
}

Vector solve_least_squares(const DenseMatrix& a, const Vector& b,
                           double rank_tol) {
  if (b.size() != a.rows())
    throw DimensionError("solve_least_squares: rhs length " +
                         std::to_string(b.size()) + " != rows " +
                         std::to_string(a.rows()));
  const QrFactors f = householder_qr(a);
  Vector y = b;
  f.apply_qt(y);
  return f.solve_upper(y, rank_tol);
}

}  // namespace sketchls
