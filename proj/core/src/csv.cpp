#include "sketchls/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "sketchls/errors.hpp"

namespace sketchls {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (std::isspace(static_cast<unsigned char>(s[b])) || s[b] == '"'))
    ++b;
  while (e > b && (std::isspace(static_cast<unsigned char>(s[e - 1])) || s[e - 1] == '"'))
    --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delimiter)) out.push_back(cell);
  if (!line.empty() && line.back() == delimiter) out.emplace_back();
  return out;
}

}  // namespace

std::string normalize_column_name(const std::string& name) {
  std::string out;
  for (char ch : name)
    if (std::isalnum(static_cast<unsigned char>(ch)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return out;
}

std::size_t CsvTable::count_complete() const {
  return static_cast<std::size_t>(std::count(complete.begin(), complete.end(), true));
}

std::size_t CsvTable::find_column(const std::string& normalized_name) const {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (normalize_column_name(header[j]) == normalized_name) return j;
  return header.size();
}

CsvTable load_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  CsvTable table;
  table.delimiter = delimiter;

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  for (const std::string& name : split(line, delimiter))
    table.header.push_back(trim(name));
  if (table.header.empty()) throw DataError(path + ": empty header");

  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row_number;
    const std::vector<std::string> cells = split(line, delimiter);
    if (cells.size() != table.header.size())
      throw DataError(path + ": row " + std::to_string(row_number) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(table.header.size()));
    std::vector<double> parsed(cells.size());
    bool row_complete = true;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      if (cell.empty()) {
        parsed[j] = std::numeric_limits<double>::quiet_NaN();
        row_complete = false;
        continue;
      }
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size() || !std::isfinite(value))
        throw DataError(path + ": row " + std::to_string(row_number) +
                        ", column \"" + table.header[j] +
                        "\": cannot parse \"" + cell + "\" as a finite real");
      parsed[j] = value;
    }
    table.rows.push_back(std::move(parsed));
    table.complete.push_back(row_complete);
  }
  return table;
}

CsvTable load_csv_auto(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string first;
  if (!std::getline(in, first)) throw DataError(path + ": empty file");
  in.close();

  const std::size_t semis = static_cast<std::size_t>(
      std::count(first.begin(), first.end(), ';'));
  const std::size_t commas = static_cast<std::size_t>(
      std::count(first.begin(), first.end(), ','));
  const std::size_t tabs = static_cast<std::size_t>(
      std::count(first.begin(), first.end(), '\t'));
  char delimiter = ',';
  if (semis > commas && semis >= tabs) delimiter = ';';
  else if (tabs > commas && tabs > semis) delimiter = '\t';
  return load_csv(path, delimiter);
}

}  // namespace sketchls
