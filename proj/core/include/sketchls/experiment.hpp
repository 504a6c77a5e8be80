#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sketchls/sketch.hpp"

namespace sketchls {

enum class InputFamily { kGaussian, kIllCond, kRedwine, kCaliHousing };

std::string_view input_family_name(InputFamily f);
std::optional<InputFamily> parse_input_family(std::string_view name);

struct ExperimentConfig {
  InputFamily input = InputFamily::kGaussian;
  std::size_t m = 4096;  // synthetic inputs only
  std::size_t d = 50;    // synthetic inputs only
  std::vector<SketchKind> kinds = {SketchKind::kGaussian,
                                   SketchKind::kPermSubmatrix,
                                   SketchKind::kBlockPerm, SketchKind::kAsph};
  std::vector<std::size_t> h_values = {2, 3, 4, 5, 6};
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  double noise_scale = 0.001;
  std::string data_path;        // dataset inputs
  std::size_t sample_to = 16384;  // calihousing; 0 = auto from file size
  bool refresh_input = false;   // fresh synthetic (A, b) per trial
  bool retain_trials = false;   // keep per-trial records in the report
  std::size_t threads = 0;      // 0 = SKETCHLS_THREADS env, then hardware
};

/// One (kind, h) cell of the grid. Trials that hit a rank degeneracy are
/// recorded by seed and excluded from the aggregates; cells whose s = d*h
/// exceeds m are marked skipped. Aggregation is done in trial-index order
/// with compensated summation, so the numbers are independent of thread
/// scheduling.
struct CellReport {
  SketchKind kind = SketchKind::kGaussian;
  std::size_t h = 0;
  std::size_t s = 0;
  std::size_t trials = 0;
  bool skipped = false;
  double mean_rel_resid = 0.0;
  double std_rel_resid = 0.0;
  double min_rel_resid = 0.0;
  double max_rel_resid = 0.0;
  double mean_entries_read = 0.0;
  double mean_scalar_ops = 0.0;
  double wall_ms = 0.0;  // excluded from determinism guarantees
  std::vector<double> trial_values;            // when retain_trials
  std::vector<std::uint64_t> degenerate_seeds; // operator seeds of failed trials
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t problem_m = 0;  // actual problem size (datasets differ from cfg.m)
  std::size_t problem_d = 0;
  std::vector<CellReport> cells;
};

/// Runs the full (kind, h) grid. Synthetic inputs build one fixed problem
/// instance per cell with the multiplier varying across trials (the
/// refresh_input flag rebuilds the problem every trial instead); dataset
/// inputs build one problem instance per run. The exact solution is computed
/// once per problem instance. Identical config and master_seed give a
/// bit-identical report apart from wall-clock fields.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// CSV with exactly these columns:
/// input,kind,h,s,trials,mean_rel_resid,std_rel_resid,min,max,
/// mean_entries_read,mean_scalar_ops,wall_ms
void write_csv(const ExperimentReport& report, std::ostream& out);

/// JSON mirror of the CSV with the config echoed.
std::string to_json_string(const ExperimentReport& report);

enum class ReportFormat { kCsv, kJson };

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path);

/// Thread budget: explicit config value, else the SKETCHLS_THREADS
/// environment variable, else hardware concurrency (0 means auto at every
/// level).
std::size_t resolve_thread_count(std::size_t configured);

}  // namespace sketchls
