#include "sketchls/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "sketchls/datasets.hpp"
#include "sketchls/errors.hpp"
#include "sketchls/generators.hpp"
#include "sketchls/llsp.hpp"
#include "sketchls/rng.hpp"

namespace sketchls {

namespace {

constexpr std::uint64_t kProblemTag = 0x70726f62ULL;  // "prob"
constexpr std::uint64_t kRhsTag = 0x72687320ULL;      // "rhs"
constexpr std::uint64_t kOpTag = 0x6f702020ULL;       // "op"
constexpr std::uint64_t kDataTag = 0x64617461ULL;     // "data"

struct TrialResult {
  double rel = std::numeric_limits<double>::quiet_NaN();
  double entries_read = 0.0;
  double scalar_ops = 0.0;
  bool degenerate = false;
  std::uint64_t op_seed = 0;
};

double kahan_mean(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = x - comp;
    const double next = sum + t;
    comp = (next - sum) - t;
    sum = next;
  }
  return xs.empty() ? std::numeric_limits<double>::quiet_NaN()
                    : sum / static_cast<double>(xs.size());
}

LlspProblem make_synthetic(const ExperimentConfig& cfg,
                           std::uint64_t problem_seed) {
  DenseMatrix a =
      cfg.input == InputFamily::kIllCond
          ? gen_illcond_input(cfg.m, cfg.d, IllCondSpectrum::standard(cfg.d),
                              derive_seed(problem_seed, 1))
          : gen_gaussian_input(cfg.m, cfg.d, derive_seed(problem_seed, 1));
  Vector b = gen_rhs(a, RhsRecipe{cfg.noise_scale},
                     derive_seed(problem_seed, kRhsTag));
  return LlspProblem::create(std::move(a), std::move(b));
}

std::size_t kind_index(SketchKind kind) {
  return static_cast<std::size_t>(kind);
}

void run_trial_range(const ExperimentConfig& cfg, SketchKind kind,
                     std::size_t h, std::size_t s,
                     const LlspProblem* shared_problem,
                     const Solution* shared_exact, std::size_t begin,
                     std::size_t end, std::vector<TrialResult>& results) {
  for (std::size_t t = begin; t < end; ++t) {
    TrialResult& res = results[t];
    res.op_seed =
        derive_seed({cfg.master_seed, kOpTag, kind_index(kind), h, t});

    const LlspProblem* problem = shared_problem;
    const Solution* exact = shared_exact;
    LlspProblem fresh_problem;
    Solution fresh_exact;
    if (cfg.refresh_input) {
      fresh_problem = make_synthetic(
          cfg, derive_seed({cfg.master_seed, kProblemTag, kind_index(kind), h, t}));
      fresh_exact = solve_exact(fresh_problem);
      problem = &fresh_problem;
      exact = &fresh_exact;
    }

    const SketchOperator op = make_sketch(kind, s, problem->m(), res.op_seed);
    CostMeter meter;
    try {
      const Solution sol = sketch_and_solve(*problem, op, exact, &meter);
      res.rel = *sol.relative_residual;
      res.entries_read = static_cast<double>(meter.entries_read);
      res.scalar_ops = static_cast<double>(meter.scalar_ops());
    } catch (const DegenerateRankError&) {
      res.degenerate = true;
    }
  }
}

CellReport run_cell(const ExperimentConfig& cfg, SketchKind kind,
                    std::size_t h, const LlspProblem* dataset_problem,
                    const Solution* dataset_exact, std::size_t problem_m,
                    std::size_t problem_d, std::size_t threads) {
  CellReport cell;
  cell.kind = kind;
  cell.h = h;
  cell.s = problem_d * h;
  if (cell.s > problem_m) {
    cell.skipped = true;
    cell.mean_rel_resid = cell.std_rel_resid = cell.min_rel_resid =
        cell.max_rel_resid = cell.mean_entries_read = cell.mean_scalar_ops =
            std::numeric_limits<double>::quiet_NaN();
    return cell;
  }
  cell.trials = cfg.trials;

  const auto t0 = std::chrono::steady_clock::now();

  const LlspProblem* problem = dataset_problem;
  const Solution* exact = dataset_exact;
  LlspProblem cell_problem;
  Solution cell_exact;
  const bool synthetic = dataset_problem == nullptr;
  if (synthetic && !cfg.refresh_input) {
    cell_problem = make_synthetic(
        cfg, derive_seed({cfg.master_seed, kProblemTag, kind_index(kind), h}));
    cell_exact = solve_exact(cell_problem);
    problem = &cell_problem;
    exact = &cell_exact;
  }

  std::vector<TrialResult> results(cfg.trials);
  const std::size_t workers = std::min(threads, cfg.trials);
  if (workers <= 1) {
    run_trial_range(cfg, kind, h, cell.s, problem, exact, 0, cfg.trials,
                    results);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (cfg.trials + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(begin + chunk, cfg.trials);
      if (begin >= end) break;
      pool.emplace_back([&, w, begin, end] {
        try {
          run_trial_range(cfg, kind, h, cell.s, problem, exact, begin, end,
                          results);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
      if (err) std::rethrow_exception(err);
  }

  // Aggregate in trial-index order with compensated summation so the report
  // does not depend on thread scheduling.
  std::vector<double> rels, reads, ops;
  rels.reserve(cfg.trials);
  for (const TrialResult& res : results) {
    if (res.degenerate) {
      cell.degenerate_seeds.push_back(res.op_seed);
      continue;
    }
    rels.push_back(res.rel);
    reads.push_back(res.entries_read);
    ops.push_back(res.scalar_ops);
  }
  if (!rels.empty()) {
    cell.mean_rel_resid = kahan_mean(rels);
    std::vector<double> sq(rels.size());
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const double dev = rels[i] - cell.mean_rel_resid;
      sq[i] = dev * dev;
    }
    cell.std_rel_resid = std::sqrt(kahan_mean(sq));
    cell.min_rel_resid = *std::min_element(rels.begin(), rels.end());
    cell.max_rel_resid = *std::max_element(rels.begin(), rels.end());
    cell.mean_entries_read = kahan_mean(reads);
    cell.mean_scalar_ops = kahan_mean(ops);
  } else {
    cell.mean_rel_resid = cell.std_rel_resid = cell.min_rel_resid =
        cell.max_rel_resid = std::numeric_limits<double>::quiet_NaN();
  }
  if (cfg.retain_trials) cell.trial_values = std::move(rels);

  cell.wall_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
  return cell;
}

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view input_family_name(InputFamily f) {
  switch (f) {
    case InputFamily::kGaussian: return "gaussian";
    case InputFamily::kIllCond: return "illcond";
    case InputFamily::kRedwine: return "redwine";
    case InputFamily::kCaliHousing: return "calihousing";
  }
  return "unknown";
}

std::optional<InputFamily> parse_input_family(std::string_view name) {
  if (name == "gaussian") return InputFamily::kGaussian;
  if (name == "illcond") return InputFamily::kIllCond;
  if (name == "redwine") return InputFamily::kRedwine;
  if (name == "calihousing") return InputFamily::kCaliHousing;
  return std::nullopt;
}

std::size_t resolve_thread_count(std::size_t configured) {
  if (configured > 0) return configured;
  if (const char* env = std::getenv("SKETCHLS_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && parsed > 0) return static_cast<std::size_t>(parsed);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? hc : 1;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials == 0) throw DimensionError("run_experiment: trials >= 1");
  const bool dataset = cfg.input == InputFamily::kRedwine ||
                       cfg.input == InputFamily::kCaliHousing;

  ExperimentReport report;
  report.config = cfg;

  LlspProblem dataset_problem;
  Solution dataset_exact;
  if (dataset) {
    if (cfg.data_path.empty())
      throw DataError("run_experiment: dataset input requires a data path");
    const CsvTable table = load_csv_auto(cfg.data_path);
    const std::uint64_t dseed = derive_seed({cfg.master_seed, kDataTag});
    dataset_problem =
        cfg.input == InputFamily::kRedwine
            ? prepare_redwine(table, dseed)
            : prepare_calihousing(table, dseed, cfg.sample_to);
    dataset_exact = solve_exact(dataset_problem);
    report.problem_m = dataset_problem.m();
    report.problem_d = dataset_problem.d();
  } else {
    if (cfg.d >= cfg.m)
      throw DimensionError("run_experiment: need d < m");
    report.problem_m = cfg.m;
    report.problem_d = cfg.d;
  }

  const std::size_t threads = resolve_thread_count(cfg.threads);
  for (SketchKind kind : cfg.kinds)
    for (std::size_t h : cfg.h_values)
      report.cells.push_back(run_cell(
          cfg, kind, h, dataset ? &dataset_problem : nullptr,
          dataset ? &dataset_exact : nullptr, report.problem_m,
          report.problem_d, threads));
  return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "input,kind,h,s,trials,mean_rel_resid,std_rel_resid,min,max,"
         "mean_entries_read,mean_scalar_ops,wall_ms\n";
  for (const CellReport& cell : report.cells) {
    out << input_family_name(report.config.input) << ','
        << kind_name(cell.kind) << ',' << cell.h << ',' << cell.s << ','
        << cell.trials << ',' << format_double(cell.mean_rel_resid) << ','
        << format_double(cell.std_rel_resid) << ','
        << format_double(cell.min_rel_resid) << ','
        << format_double(cell.max_rel_resid) << ','
        << format_double(cell.mean_entries_read) << ','
        << format_double(cell.mean_scalar_ops) << ','
        << format_double(cell.wall_ms) << '\n';
  }
}

std::string to_json_string(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  const ExperimentConfig& cfg = report.config;
  nlohmann::ordered_json jc;
  jc["input"] = std::string(input_family_name(cfg.input));
  jc["m"] = cfg.m;
  jc["d"] = cfg.d;
  std::vector<std::string> kinds;
  for (SketchKind k : cfg.kinds) kinds.emplace_back(kind_name(k));
  jc["kinds"] = kinds;
  jc["h_values"] = cfg.h_values;
  jc["trials"] = cfg.trials;
  jc["master_seed"] = cfg.master_seed;
  jc["noise_scale"] = cfg.noise_scale;
  jc["data_path"] = cfg.data_path;
  jc["sample_to"] = cfg.sample_to;
  jc["refresh_input"] = cfg.refresh_input;
  j["config"] = jc;
  j["problem"] = {{"m", report.problem_m}, {"d", report.problem_d}};

  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const CellReport& cell : report.cells) {
    nlohmann::ordered_json jcell;
    jcell["input"] = std::string(input_family_name(cfg.input));
    jcell["kind"] = std::string(kind_name(cell.kind));
    jcell["h"] = cell.h;
    jcell["s"] = cell.s;
    jcell["trials"] = cell.trials;
    jcell["skipped"] = cell.skipped;
    if (!cell.skipped) {
      jcell["mean_rel_resid"] = cell.mean_rel_resid;
      jcell["std_rel_resid"] = cell.std_rel_resid;
      jcell["min"] = cell.min_rel_resid;
      jcell["max"] = cell.max_rel_resid;
      jcell["mean_entries_read"] = cell.mean_entries_read;
      jcell["mean_scalar_ops"] = cell.mean_scalar_ops;
      jcell["wall_ms"] = cell.wall_ms;
      if (!cell.degenerate_seeds.empty())
        jcell["degenerate_seeds"] = cell.degenerate_seeds;
      if (!cell.trial_values.empty())
        jcell["trial_values"] = cell.trial_values;
    }
    cells.push_back(jcell);
  }
  j["cells"] = cells;
  return j.dump(2);
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  if (format == ReportFormat::kCsv) {
    write_csv(report, out);
  } else {
    out << to_json_string(report) << '\n';
  }
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace sketchls
