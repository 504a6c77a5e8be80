#include "sketchls/datasets.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "sketchls/errors.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

namespace {

const std::vector<std::string> kRedwineFeatures = {
    "fixedacidity",     "volatileacidity",   "citricacid",
    "residualsugar",    "chlorides",         "freesulfurdioxide",
    "totalsulfurdioxide", "density",         "ph",
    "sulphates",        "alcohol"};

constexpr std::uint64_t kPermTag = 0x7065726dULL;    // "perm"
constexpr std::uint64_t kSampleTag = 0x73616d70ULL;  // "samp"

}  // namespace

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

DatasetSpec DatasetSpec::redwine() {
  DatasetSpec spec;
  spec.name = "redwine";
  spec.target_column = "quality";
  spec.feature_columns = kRedwineFeatures;
  spec.pad_to = 0;  // next power of two
  spec.bias_first = true;
  return spec;
}

DatasetSpec DatasetSpec::calihousing() {
  DatasetSpec spec;
  spec.name = "calihousing";
  spec.target_column = "medianhousevalue";
  spec.sample_to = 16384;
  spec.bias_first = false;
  return spec;
}

LlspProblem prepare_redwine(const CsvTable& table, std::uint64_t seed) {
  const std::size_t target = table.find_column("quality");
  if (target == table.n_cols())
    throw DataError("redwine: no \"quality\" column");

  // The 11 physiochemical features, kept in file order.
  std::vector<std::size_t> feature_cols;
  for (std::size_t j = 0; j < table.n_cols(); ++j) {
    if (j == target) continue;
    const std::string norm = normalize_column_name(table.header[j]);
    bool known = false;
    for (const std::string& name : kRedwineFeatures)
      if (norm == name) { known = true; break; }
    if (!known)
      throw DataError("redwine: unexpected column \"" + table.header[j] + "\"");
    feature_cols.push_back(j);
  }
  if (feature_cols.size() != kRedwineFeatures.size())
    throw DataError("redwine: expected 11 feature columns, found " +
                    std::to_string(feature_cols.size()));

  const std::size_t n = table.n_rows();
  if (table.count_complete() != n)
    throw DataError("redwine: table has missing cells");
  if (n != 1599)
    std::cerr << "warning: redwine table has " << n
              << " rows (expected 1599); padding to the next power of two\n";

  const std::size_t m = next_power_of_two(n);
  const std::size_t d = 1 + feature_cols.size();

  // Bias column first, then features; rows beyond the data stay entirely
  // zero (bias entry included), so they are vacuous in the normal equations.
  DenseMatrix a(m, d);
  Vector b(m);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = a.row(i);
    row[0] = 1.0;
    for (std::size_t j = 0; j < feature_cols.size(); ++j)
      row[1 + j] = table.rows[i][feature_cols[j]];
    b[i] = table.rows[i][target];
  }

  // Full row permutation applied jointly to A and b.
  Rng rng(derive_seed(seed, kPermTag));
  const std::vector<std::size_t> perm = sample_without_replacement(m, m, rng);
  DenseMatrix pa(m, d);
  Vector pb(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* src = a.row(perm[i]);
    double* dst = pa.row(i);
    for (std::size_t j = 0; j < d; ++j) dst[j] = src[j];
    pb[i] = b[perm[i]];
  }
  return LlspProblem::create(std::move(pa), std::move(pb));
}

LlspProblem prepare_calihousing(const CsvTable& table, std::uint64_t seed,
                                std::size_t sample_to) {
  std::size_t target = table.find_column("medianhousevalue");
  if (target == table.n_cols()) target = table.find_column("medhouseval");
  if (target == table.n_cols())
    throw DataError("calihousing: no median house value column "
                    "(median_house_value / MedHouseVal)");

  std::vector<std::size_t> feature_cols;
  for (std::size_t j = 0; j < table.n_cols(); ++j)
    if (j != target) feature_cols.push_back(j);
  if (feature_cols.size() != 8)
    throw DataError("calihousing: expected 8 feature columns, found " +
                    std::to_string(feature_cols.size()));

  std::vector<std::size_t> complete_rows;
  for (std::size_t i = 0; i < table.n_rows(); ++i)
    if (table.complete[i]) complete_rows.push_back(i);

  if (sample_to == 0) {
    if (complete_rows.empty())
      throw DataError("calihousing: no complete rows");
    sample_to = next_power_of_two(complete_rows.size());
    if (sample_to > complete_rows.size()) sample_to >>= 1;
  }
  if (complete_rows.size() < sample_to)
    throw DataError("calihousing: only " +
                    std::to_string(complete_rows.size()) +
                    " complete rows after dropping records with missing "
                    "cells, need " + std::to_string(sample_to));

  Rng rng(derive_seed(seed, kSampleTag));
  const std::vector<std::size_t> pick =
      sample_without_replacement(sample_to, complete_rows.size(), rng);

  const std::size_t d = feature_cols.size() + 1;  // bias column last
  DenseMatrix a(sample_to, d);
  Vector b(sample_to);
  for (std::size_t i = 0; i < sample_to; ++i) {
    const std::vector<double>& src = table.rows[complete_rows[pick[i]]];
    double* dst = a.row(i);
    for (std::size_t j = 0; j < feature_cols.size(); ++j)
      dst[j] = src[feature_cols[j]];
    dst[d - 1] = 1.0;
    b[i] = src[target];
  }
  return LlspProblem::create(std::move(a), std::move(b));
}

}  // namespace sketchls
