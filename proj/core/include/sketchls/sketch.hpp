#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchls/matrix.hpp"

namespace sketchls {

enum class SketchKind {
  kGaussian,       // dense i.i.d. N(0, 1/s) entries
  kPermSubmatrix,  // s rows of a random m x m permutation matrix
  kBlockPerm,      // c = m/s identity blocks, columns randomly permuted
  kAsph,           // row-sampled 3-level Hadamard factor with sign diagonal
};

/// CLI-facing kind names: "gaussian", "perm", "block-perm", "asph".
std::string_view kind_name(SketchKind kind);
std::optional<SketchKind> parse_kind(std::string_view name);

/// Tallies of scalar work done by one apply() call. Reset at the start of
/// each apply; reads count accesses to entries of the input matrix (with
/// multiplicity). The sparse kinds must stay well under one read per input
/// entry times one; the Gaussian kind pays s reads per entry.
struct CostMeter {
  std::uint64_t multiplies = 0;
  std::uint64_t additions = 0;
  std::uint64_t entries_read = 0;

  void reset() { multiplies = additions = entries_read = 0; }
  std::uint64_t scalar_ops() const { return multiplies + additions; }
};

/// An s x m sketching operator F. Non-Gaussian kinds are scaled-unitary:
/// F/scale has orthonormal rows over the padded domain, so F F^T = scale^2 I.
///
/// Padding: when the kind needs a divisibility property (s | m for BlockPerm,
/// 8 | m for Asph), the domain is padded up to m_padded and inputs are
/// treated as zero below row m. Zero rows change no norms, so the embedding
/// and least-squares behavior of the operator is unaffected.
///
/// Operators are immutable after construction and safe to share across
/// threads; the CostMeter is per-call state owned by the caller.
class SketchOperator {
 public:
  SketchKind kind() const { return kind_; }
  std::size_t s() const { return s_; }
  std::size_t m() const { return m_; }
  std::size_t m_padded() const { return m_padded_; }
  std::uint64_t seed() const { return seed_; }

  /// The free scalar multiplying the orthonormal structure (default 1).
  /// Least-squares solutions are invariant under it.
  double scale() const { return scale_; }

  /// Copy of this operator with scale multiplied by alpha.
  SketchOperator with_scale(double alpha) const;

  /// F * input, where input has m rows (zero-padded to m_padded internally).
  /// The meter is reset on entry and updated with this call's counts.
  DenseMatrix apply(const DenseMatrix& input, CostMeter& meter) const;
  DenseMatrix apply(const DenseMatrix& input) const;

  /// Materializes F as a dense s x m_padded matrix. Test oracle only;
  /// guarded to s * m_padded <= 1e6 entries.
  DenseMatrix as_dense() const;

  /// Structural nonzero count (excludes the stored sign diagonal for Asph).
  std::size_t nnz() const;

  // Structure accessors (tests and diagnostics).
  const std::vector<std::size_t>& sampled_rows() const { return rows_; }
  const std::vector<std::size_t>& column_perm() const { return col_perm_; }
  const std::vector<double>& sign_diagonal() const { return signs_; }

 private:
  friend SketchOperator make_sketch(SketchKind, std::size_t, std::size_t,
                                    std::uint64_t);
  SketchKind kind_ = SketchKind::kGaussian;
  std::size_t s_ = 0;
  std::size_t m_ = 0;
  std::size_t m_padded_ = 0;
  std::uint64_t seed_ = 0;
  double scale_ = 1.0;
  double norm_ = 1.0;  // kind normalization: 1, 1/sqrt(c), 1/sqrt(8), 1/sqrt(s)

  std::vector<std::size_t> rows_;      // PermSubmatrix sample / Asph row sample
  std::vector<std::size_t> col_perm_;  // BlockPerm column permutation
  std::vector<double> signs_;          // Asph +-1 diagonal, length m_padded
  DenseMatrix gaussian_;               // Gaussian kind, standard normal entries
};

/// Builds an operator of the given kind. Requires 0 < s <= m.
///   Gaussian:       i.i.d. N(0, 1/s) entries.
///   PermSubmatrix:  s distinct rows of a uniform random m x m permutation.
///   BlockPerm:      [I_s | ... | I_s] (c = m_padded/s blocks) with a uniform
///                   random column permutation, times 1/sqrt(c).
///   Asph:           R * (H_8 (x) I_{m_padded/8}) * D / sqrt(8), with D a
///                   random sign diagonal and R a uniform row sample without
///                   replacement; every sampled row carries exactly 8 signs.
SketchOperator make_sketch(SketchKind kind, std::size_t s, std::size_t m,
                           std::uint64_t seed);

}  // namespace sketchls
