#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sketchls {

/// Parsed numeric CSV. Cells are doubles; an empty cell is recorded as NaN
/// and marks its row incomplete (dataset preparation decides what to do with
/// those). A non-empty cell that does not parse as a finite real is an error.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<bool> complete;  // per row: no missing cells
  char delimiter = ',';

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return header.size(); }
  std::size_t count_complete() const;

  /// Index of a column whose normalized name (lowercase, alphanumerics only)
  /// matches; returns n_cols() when absent.
  std::size_t find_column(const std::string& normalized_name) const;
};

/// Lowercase and strip non-alphanumerics, so "Median_House Value" and
/// "medianhousevalue" compare equal.
std::string normalize_column_name(const std::string& name);

/// Parses a headered CSV with the given delimiter. Ragged rows and
/// non-numeric cells are DataErrors naming the row and column (1-based data
/// row numbers, header excluded).
CsvTable load_csv(const std::string& path, char delimiter);

/// Sniffs the delimiter from the header line (';' vs ','; tab as fallback).
CsvTable load_csv_auto(const std::string& path);

}  // namespace sketchls
