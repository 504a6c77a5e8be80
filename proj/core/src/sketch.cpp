#include "sketchls/sketch.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

namespace {

constexpr std::size_t kDenseGuard = 1000000;

// Entry (i, j) of the order-8 Sylvester-Hadamard matrix H_8.
double hadamard_sign(std::size_t i, std::size_t j) {
  return (std::popcount(static_cast<unsigned>(i & j)) & 1u) ? -1.0 : 1.0;
}

std::size_t round_up(std::size_t n, std::size_t k) {
  return ((n + k - 1) / k) * k;
}

}  // namespace

std::string_view kind_name(SketchKind kind) {
  switch (kind) {
    case SketchKind::kGaussian: return "gaussian";
    case SketchKind::kPermSubmatrix: return "perm";
    case SketchKind::kBlockPerm: return "block-perm";
    case SketchKind::kAsph: return "asph";
  }
  return "unknown";
}

std::optional<SketchKind> parse_kind(std::string_view name) {
  if (name == "gaussian") return SketchKind::kGaussian;
  if (name == "perm") return SketchKind::kPermSubmatrix;
  if (name == "block-perm") return SketchKind::kBlockPerm;
  if (name == "asph") return SketchKind::kAsph;
  return std::nullopt;
}

SketchOperator make_sketch(SketchKind kind, std::size_t s, std::size_t m,
                           std::uint64_t seed) {
  if (s == 0 || m == 0)
    throw DimensionError("make_sketch: zero dimension");
  if (s > m)
    throw DimensionError("make_sketch: s (" + std::to_string(s) +
                         ") > m (" + std::to_string(m) + ")");

  SketchOperator op;
  op.kind_ = kind;
  op.s_ = s;
  op.m_ = m;
  op.seed_ = seed;
  Rng rng(seed);

  switch (kind) {
    case SketchKind::kGaussian: {
      op.m_padded_ = m;
      op.norm_ = 1.0 / std::sqrt(static_cast<double>(s));
      DenseMatrix g(s, m);
      for (std::size_t i = 0; i < s * m; ++i) g.data()[i] = rng.next_gaussian();
      op.gaussian_ = std::move(g);
      break;
    }
    case SketchKind::kPermSubmatrix: {
      op.m_padded_ = m;
      op.norm_ = 1.0;
      op.rows_ = sample_without_replacement(s, m, rng);
      break;
    }
    case SketchKind::kBlockPerm: {
      op.m_padded_ = round_up(m, s);
      const std::size_t c = op.m_padded_ / s;
      op.norm_ = 1.0 / std::sqrt(static_cast<double>(c));
      op.col_perm_ = sample_without_replacement(op.m_padded_, op.m_padded_, rng);
      break;
    }
    case SketchKind::kAsph: {
      op.m_padded_ = round_up(m, 8);
      op.norm_ = 1.0 / std::sqrt(8.0);
      op.signs_.resize(op.m_padded_);
      for (auto& sgn : op.signs_) sgn = rng.next_sign();
      op.rows_ = sample_without_replacement(s, op.m_padded_, rng);
      break;
    }
  }
  return op;
}

SketchOperator SketchOperator::with_scale(double alpha) const {
  if (!(alpha > 0.0))
    throw DimensionError("with_scale: scale must be positive");
  SketchOperator copy = *this;
  copy.scale_ *= alpha;
  return copy;
}

DenseMatrix SketchOperator::apply(const DenseMatrix& input,
                                  CostMeter& meter) const {
  if (input.rows() != m_)
    throw DimensionError("SketchOperator::apply: input has " +
                         std::to_string(input.rows()) + " rows, operator expects " +
                         std::to_string(m_));
  meter.reset();
  const std::size_t cols = input.cols();
  const double coeff = scale_ * norm_;
  DenseMatrix out(s_, cols);

  switch (kind_) {
    case SketchKind::kPermSubmatrix: {
      for (std::size_t t = 0; t < s_; ++t) {
        const double* src = input.row(rows_[t]);
        double* dst = out.row(t);
        for (std::size_t c = 0; c < cols; ++c) dst[c] = coeff * src[c];
      }
      meter.entries_read += s_ * cols;
      meter.multiplies += s_ * cols;
      break;
    }
    case SketchKind::kBlockPerm: {
      // Column j of F holds a single one at row col_perm_[j] mod s; rows of
      // the input beyond m_ are implicit zeros and never touched.
      for (std::size_t j = 0; j < m_; ++j) {
        double* dst = out.row(col_perm_[j] % s_);
        const double* src = input.row(j);
        for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
      }
      for (std::size_t t = 0; t < s_; ++t) {
        double* dst = out.row(t);
        for (std::size_t c = 0; c < cols; ++c) dst[c] *= coeff;
      }
      meter.entries_read += m_ * cols;
      meter.additions += m_ * cols;
      meter.multiplies += s_ * cols;
      break;
    }
    case SketchKind::kAsph: {
      const std::size_t block = m_padded_ / 8;
      for (std::size_t t = 0; t < s_; ++t) {
        const std::size_t i = rows_[t] / block;
        const std::size_t k = rows_[t] % block;
        double* dst = out.row(t);
        for (std::size_t j = 0; j < 8; ++j) {
          const std::size_t src_row = j * block + k;
          if (src_row >= m_) continue;  // zero-padded region
          const double* src = input.row(src_row);
          if (hadamard_sign(i, j) * signs_[src_row] > 0.0) {
            for (std::size_t c = 0; c < cols; ++c) dst[c] += src[c];
          } else {
            for (std::size_t c = 0; c < cols; ++c) dst[c] -= src[c];
          }
          meter.entries_read += cols;
          meter.additions += cols;
        }
        for (std::size_t c = 0; c < cols; ++c) dst[c] *= coeff;
      }
      meter.multiplies += s_ * cols;
      break;
    }
    case SketchKind::kGaussian: {
      for (std::size_t r = 0; r < s_; ++r) {
        const double* frow = gaussian_.row(r);
        double* dst = out.row(r);
        for (std::size_t j = 0; j < m_; ++j) {
          const double g = frow[j];
          const double* src = input.row(j);
          for (std::size_t c = 0; c < cols; ++c) dst[c] += g * src[c];
        }
        for (std::size_t c = 0; c < cols; ++c) dst[c] *= coeff;
      }
      meter.entries_read += s_ * m_ * cols;
      meter.multiplies += s_ * m_ * cols + s_ * cols;
      meter.additions += s_ * m_ * cols;
      break;
    }
  }
  return out;
}

DenseMatrix SketchOperator::apply(const DenseMatrix& input) const {
  CostMeter scratch;
  return apply(input, scratch);
}

DenseMatrix SketchOperator::as_dense() const {
  if (s_ * m_padded_ > kDenseGuard)
    throw DimensionError("as_dense: " + std::to_string(s_ * m_padded_) +
                         " entries exceeds the materialization guard");
  const double coeff = scale_ * norm_;
  DenseMatrix f(s_, m_padded_);
  switch (kind_) {
    case SketchKind::kPermSubmatrix:
      for (std::size_t t = 0; t < s_; ++t) f(t, rows_[t]) = coeff;
      break;
    case SketchKind::kBlockPerm:
      for (std::size_t j = 0; j < m_padded_; ++j)
        f(col_perm_[j] % s_, j) = coeff;
      break;
    case SketchKind::kAsph: {
      const std::size_t block = m_padded_ / 8;
      for (std::size_t t = 0; t < s_; ++t) {
        const std::size_t i = rows_[t] / block;
        const std::size_t k = rows_[t] % block;
        for (std::size_t j = 0; j < 8; ++j) {
          const std::size_t col = j * block + k;
          f(t, col) = coeff * hadamard_sign(i, j) * signs_[col];
        }
      }
      break;
    }
    case SketchKind::kGaussian:
      for (std::size_t r = 0; r < s_; ++r)
        for (std::size_t j = 0; j < m_; ++j) f(r, j) = coeff * gaussian_(r, j);
      break;
  }
  return f;
}

std::size_t SketchOperator::nnz() const {
  switch (kind_) {
    case SketchKind::kPermSubmatrix: return s_;
    case SketchKind::kBlockPerm: return m_padded_;
    case SketchKind::kAsph: return 8 * s_;
    case SketchKind::kGaussian: return s_ * m_;
  }
  return 0;
}

}  // namespace sketchls
