#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bmc/core.hpp"
#include "bmc/workload.hpp"

namespace bmc {

/// Model descriptor strings: "linear" | "capped:K" | "sqrt".
CostModel parse_model(const std::string& spec);

struct ExperimentConfig {
  WorkloadSpec workload;
  std::vector<std::string> policies;
  std::string model = "linear";
  std::vector<int> n_grid;
  bool include_opt = false;
  /// DP feasibility caps: OPT rows are skipped above these horizons.
  int opt_cap_capped = 2000;
  int opt_cap_linear = 1500;
  int repetitions = 1;
};

struct ResultRow {
  int n = 0;
  std::string policy;
  int rep = 0;
  bool ok = true;
  std::string error;
  double total_cost = 0;
  double per_step_cost = 0;
  int max_stack = 0;
  bool has_opt = false;
  double opt_cost = 0;
  double ratio = 0;
};

struct ResultsTable {
  std::vector<ResultRow> rows;
};

/// Runs every (n, policy, repetition) cell. One instance is generated
/// per repetition and truncated to each n so curves share randomness.
/// Cells run concurrently (worker count capped by BMC_THREADS); OPT
/// solves run serially afterwards. Per-cell failures become error rows.
ResultsTable run_experiment(const ExperimentConfig& config);

/// CSV schema: n,policy,rep,total_cost,per_step_cost,max_stack,opt_cost,ratio
void write_results_csv(std::ostream& out, const ResultsTable& table);
void write_results_csv(const std::string& path, const ResultsTable& table);
ResultsTable read_results_csv(const std::string& path);

/// Writes an SVG line chart (per-step cost vs n, one series per policy,
/// plus an opt series when present) and a parallel plain-text table.
/// Errors on an empty table. Empty paths skip that output.
void emit_plot_data(const ResultsTable& table, const std::string& svg_path,
                    const std::string& table_path);

}  // namespace bmc
