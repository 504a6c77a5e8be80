#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sketchls/csv.hpp"
#include "sketchls/llsp.hpp"

namespace sketchls {

/// Declarative description of how a benchmark CSV becomes an LlspProblem.
struct DatasetSpec {
  std::string name;
  std::string target_column;                  // normalized name
  std::vector<std::string> feature_columns;   // normalized, required present
  std::optional<std::size_t> pad_to;          // zero-pad rows up to this (0 = next power of two)
  std::optional<std::size_t> sample_to;       // sample rows without replacement
  bool bias_first = true;                     // bias column position

  static DatasetSpec redwine();
  static DatasetSpec calihousing();
};

/// Red wine quality table -> 2048 x 12 problem: bias column of ones first,
/// the eleven feature columns after it, b = quality scores. Rows beyond the
/// data are zero-padded whole (bias entry included), then a full random row
/// permutation is applied jointly to A and b. A row count other than 1599
/// warns and pads to the next power of two of the actual count.
LlspProblem prepare_redwine(const CsvTable& table, std::uint64_t seed);

/// California housing table -> (sample_to x 9) problem: rows with missing
/// cells are dropped, sample_to rows are sampled uniformly without
/// replacement (seed-deterministic), and A = [features | 1] with the bias
/// column last. sample_to = 0 picks the largest power of two that fits the
/// complete rows; the default 16384 errors when fewer complete rows exist.
LlspProblem prepare_calihousing(const CsvTable& table, std::uint64_t seed,
                                std::size_t sample_to = 16384);

std::size_t next_power_of_two(std::size_t n);

}  // namespace sketchls
