// sketchls: sketch-and-solve least squares from the command line.
//
// Subcommands:
//   solve             solve one system from CSV input, sketched or exact
//   experiment        run a seeded (kind, h) grid and emit a CSV/JSON report
//   verify-embedding  probe an operator's embedding quality on Gaussian input
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical degeneracy.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sketchls/embedding.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/experiment.hpp"
#include "sketchls/generators.hpp"
#include "sketchls/llsp.hpp"
#include "sketchls/rng.hpp"
#include "sketchls/sketch.hpp"

namespace {

using namespace sketchls;

std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

char sniff_delimiter(const std::string& line) {
  const auto n_of = [&](char c) {
    return std::count(line.begin(), line.end(), c);
  };
  if (n_of(';') > n_of(',')) return ';';
  if (n_of(',') > 0) return ',';
  if (n_of('\t') > 0) return '\t';
  return ' ';
}

std::vector<double> parse_numeric_line(const std::string& line, char delim,
                                       bool* ok) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  *ok = true;
  while (std::getline(ss, cell, delim)) {
    // collapse repeated space delimiters
    if (cell.empty() && delim == ' ') continue;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') {
      *ok = false;
      return out;
    }
    out.push_back(v);
  }
  return out;
}

// Numeric matrix from CSV; a non-numeric first line is treated as a header.
DenseMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  char delim = 0;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++lineno;
    if (delim == 0) delim = sniff_delimiter(line);
    bool ok = false;
    std::vector<double> vals = parse_numeric_line(line, delim, &ok);
    if (!ok) {
      if (lineno == 1) continue;  // header
      throw DataError(path + ": line " + std::to_string(lineno) +
                      " is not numeric");
    }
    if (!rows.empty() && vals.size() != rows.front().size())
      throw DataError(path + ": ragged row at line " + std::to_string(lineno));
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw DataError(path + ": no numeric rows");
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  std::vector<double> data;
  data.reserve(m * n);
  for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  return DenseMatrix(m, n, std::move(data));
}

Vector load_vector(const std::string& path) {
  const DenseMatrix m = load_matrix(path);
  std::vector<double> vals;
  if (m.cols() == 1) {
    vals.assign(m.data(), m.data() + m.rows());
  } else if (m.rows() == 1) {
    vals.assign(m.data(), m.data() + m.cols());
  } else {
    throw DataError(path + ": expected a single row or column of values");
  }
  return Vector::from(std::move(vals));
}

int cmd_solve(const std::string& matrix_path, const std::string& rhs,
              const std::string& multiplier, std::size_t h,
              std::uint64_t seed, bool exact_flag) {
  DenseMatrix full = load_matrix(matrix_path);
  DenseMatrix a;
  Vector b;
  if (rhs == "last-column") {
    if (full.cols() < 2)
      throw DataError("matrix needs at least two columns to carry the rhs");
    a = DenseMatrix(full.rows(), full.cols() - 1);
    b = Vector(full.rows());
    for (std::size_t i = 0; i < full.rows(); ++i) {
      for (std::size_t j = 0; j + 1 < full.cols(); ++j) a(i, j) = full(i, j);
      b[i] = full(i, full.cols() - 1);
    }
  } else {
    a = std::move(full);
    b = load_vector(rhs);
  }
  const LlspProblem problem = LlspProblem::create(std::move(a), std::move(b));

  std::optional<Solution> exact;
  if (exact_flag || multiplier.empty()) exact = solve_exact(problem);

  if (multiplier.empty()) {
    std::cout << "x:";
    for (std::size_t j = 0; j < exact->x.size(); ++j)
      std::cout << ' ' << fmt(exact->x[j]);
    std::cout << "\nresidual: " << fmt(exact->residual) << '\n';
    return 0;
  }

  const auto kind = parse_kind(multiplier);
  if (!kind) throw DimensionError("unknown multiplier \"" + multiplier + "\"");
  if (h == 0) throw DimensionError("--h must be positive");
  const std::size_t s = h * problem.d();
  if (s > problem.m())
    throw DimensionError("s = h*d = " + std::to_string(s) + " exceeds m = " +
                         std::to_string(problem.m()));
  if (s < problem.d() + 1)
    std::cerr << "warning: s < d+1, reduced problem is underdetermined\n";

  const SketchOperator op = make_sketch(*kind, s, problem.m(), seed);
  CostMeter meter;
  const Solution sol =
      sketch_and_solve(problem, op, exact ? &*exact : nullptr, &meter);

  std::cout << "x:";
  for (std::size_t j = 0; j < sol.x.size(); ++j)
    std::cout << ' ' << fmt(sol.x[j]);
  std::cout << "\nresidual: " << fmt(sol.residual) << '\n';
  if (exact) {
    std::cout << "exact_residual: " << fmt(exact->residual) << '\n'
              << "relative_residual: " << fmt(*sol.relative_residual) << '\n';
  }
  std::cout << "kind: " << kind_name(*kind) << " s: " << s << " seed: " << seed
            << '\n'
            << "entries_read: " << meter.entries_read
            << " scalar_ops: " << meter.scalar_ops() << '\n';
  return 0;
}

int cmd_experiment(ExperimentConfig cfg, const std::string& out_path,
                   const std::string& format) {
  const ExperimentReport report = run_experiment(cfg);
  const ReportFormat rf =
      format == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
  if (out_path.empty() || out_path == "-") {
    if (rf == ReportFormat::kCsv)
      write_csv(report, std::cout);
    else
      std::cout << to_json_string(report) << '\n';
  } else {
    emit_report(report, rf, out_path);
  }
  std::size_t skipped = 0;
  for (const auto& cell : report.cells) skipped += cell.skipped ? 1 : 0;
  std::cerr << "experiment: " << report.cells.size() << " cells ("
            << skipped << " skipped), problem " << report.problem_m << "x"
            << report.problem_d << '\n';
  return 0;
}

int cmd_verify_embedding(const std::string& multiplier, std::size_t s,
                         std::size_t m, std::size_t cols, double epsilon,
                         std::size_t probes, std::uint64_t seed,
                         double gamma) {
  const auto kind = parse_kind(multiplier);
  if (!kind) throw DimensionError("unknown multiplier \"" + multiplier + "\"");
  const DenseMatrix input =
      gen_gaussian_input(m, cols, derive_seed({seed, 0x696e707574ULL}));
  const SketchOperator op = make_sketch(*kind, s, m, derive_seed({seed, 0x6f70ULL}));
  const EmbeddingReport rep =
      check_embedding(op, input, epsilon, probes, seed, gamma);

  nlohmann::ordered_json j;
  j["kind"] = std::string(kind_name(*kind));
  j["s"] = s;
  j["m"] = m;
  j["cols"] = cols;
  j["epsilon"] = rep.epsilon_target;
  j["gamma_target"] = rep.gamma_target;
  j["probes"] = rep.probes;
  j["seed"] = seed;
  j["ratio_min"] = rep.ratio_min;
  j["ratio_mean"] = rep.ratio_mean;
  j["ratio_max"] = rep.ratio_max;
  j["violation_fraction"] = rep.violation_fraction;
  j["resamples"] = rep.resamples;
  j["scale_correction"] = rep.scale_correction;
  std::cout << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sketch-and-solve least squares for highly overdetermined systems"};
  app.require_subcommand(1);
  // --h is a real option below, so help stays on --help only.
  app.set_help_flag("--help", "print help");

  // solve
  auto* solve = app.add_subcommand("solve", "solve one system from CSV");
  solve->set_help_flag("--help", "print help");
  std::string matrix_path, rhs_spec = "last-column", multiplier;
  std::size_t h = 0;
  std::uint64_t seed = 0;
  bool exact_flag = false;
  solve->add_option("--matrix", matrix_path, "matrix CSV (numeric, optional header)")
      ->required();
  solve->add_option("--rhs", rhs_spec,
                    "rhs CSV path, or \"last-column\" of the matrix file");
  solve->add_option("--multiplier", multiplier,
                    "gaussian|perm|block-perm|asph (omit for exact solve)");
  solve->add_option("--h", h, "sketch size as a multiple of d (s = h*d)");
  solve->add_option("--seed", seed, "operator seed");
  solve->add_flag("--exact", exact_flag,
                  "also compute the exact solution and the relative residual");

  // experiment
  auto* experiment = app.add_subcommand(
      "experiment", "run a seeded multiplier/h grid and emit a report");
  experiment->set_help_flag("--help", "print help");
  std::string input_name = "gaussian", data_path, out_path, format = "csv";
  std::vector<std::string> multipliers;
  std::vector<std::size_t> h_values;
  ExperimentConfig cfg;
  experiment->add_option("--input", input_name,
                         "gaussian|illcond|redwine|calihousing");
  experiment->add_option("--m", cfg.m, "synthetic rows (default 4096)");
  experiment->add_option("--d", cfg.d, "synthetic cols (default 50)");
  experiment->add_option("--data", data_path, "dataset CSV path");
  experiment->add_option("--multipliers", multipliers,
                         "comma list of kinds (default: all four)")
      ->delimiter(',');
  experiment->add_option("--h", h_values, "list of h values (default 2,3,4,5,6)")
      ->delimiter(',');
  experiment->add_option("--trials", cfg.trials, "trials per cell (default 100)");
  experiment->add_option("--seed", cfg.master_seed, "master seed");
  experiment->add_option("--out", out_path, "output path (default stdout)");
  experiment->add_option("--format", format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--noise", cfg.noise_scale,
                         "rhs noise scale (default 0.001)");
  experiment->add_option("--sample-to", cfg.sample_to,
                         "calihousing sample size (0 = auto, default 16384)");
  experiment->add_flag("--refresh-input", cfg.refresh_input,
                       "fresh synthetic (A,b) every trial instead of per cell");

  // verify-embedding
  auto* verify = app.add_subcommand(
      "verify-embedding", "probe embedding ratios on Gaussian input");
  verify->set_help_flag("--help", "print help");
  std::string v_multiplier;
  std::size_t v_s = 0, v_m = 0, v_cols = 0, v_probes = 1000;
  double v_epsilon = 0.5, v_gamma = 0.1;
  std::uint64_t v_seed = 0;
  verify->add_option("--multiplier", v_multiplier, "gaussian|perm|block-perm|asph")
      ->required();
  verify->add_option("--s", v_s, "sketch rows")->required();
  verify->add_option("--m", v_m, "input rows")->required();
  verify->add_option("--cols", v_cols, "input columns")->required();
  verify->add_option("--epsilon", v_epsilon, "distortion tolerance");
  verify->add_option("--probes", v_probes, "number of probe vectors");
  verify->add_option("--seed", v_seed, "probe/input seed");
  verify->add_option("--gamma", v_gamma, "target failure probability (echoed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed())
      return cmd_solve(matrix_path, rhs_spec, multiplier, h, seed, exact_flag);
    if (experiment->parsed()) {
      const auto family = parse_input_family(input_name);
      if (!family) throw DimensionError("unknown input \"" + input_name + "\"");
      cfg.input = *family;
      cfg.data_path = data_path;
      if (!multipliers.empty()) {
        cfg.kinds.clear();
        for (const std::string& name : multipliers) {
          const auto kind = parse_kind(name);
          if (!kind)
            throw DimensionError("unknown multiplier \"" + name + "\"");
          cfg.kinds.push_back(*kind);
        }
      }
      if (!h_values.empty()) cfg.h_values = h_values;
      return cmd_experiment(cfg, out_path, format);
    }
    if (verify->parsed())
      return cmd_verify_embedding(v_multiplier, v_s, v_m, v_cols, v_epsilon,
                                  v_probes, v_seed, v_gamma);
  } catch (const DegenerateRankError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
