#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jra/exact_solver.hpp"
#include "jra/instance.hpp"
#include "jra/slppr.hpp"
#include "jra/tour.hpp"

namespace jra {

/// Ground-truth reference for deviation / edge-difference columns.
struct Reference {
  double cost = 0.0;
  std::optional<EdgeSet> edges;
};

struct StageReport {
  std::string name;
  double cost = 0.0;
  std::optional<double> deviation_pct;
  double seconds = 0.0;
  std::optional<std::size_t> edge_diff;  // N_d vs reference
};

struct PipelineReport {
  int n = 0;
  double alpha = 0.0;
  bool use_ppr_merge = true;
  int passes = 0;
  double radius = 0.0;
  int step = 0;
  int cycles = 0;          // two-way assignment cycle count
  std::size_t collected = 0;  // |N_clc|
  std::vector<StageReport> stages;
  bool incomplete = false;
  bool time_limited = false;
  double final_cost = 0.0;
  std::optional<double> reference_cost;

  std::string to_json() const;
};

struct PipelineResult {
  Tour tour;
  PipelineReport report;
};

/// Full workflow: two-way assignment -> cycle merging -> optional PPR
/// merge refinement -> SLPPR polishing passes -> Large-alpha solve.
/// Stage costs are non-increasing from the merge onward. A stage failure
/// stops the pipeline and flags the report incomplete, keeping the last
/// valid tour.
PipelineResult run_pipeline(const Instance& inst, const PolishConfig& cfg, double alpha,
                            const SolveOptions& opts, bool use_ppr_merge,
                            const std::optional<Reference>& reference = {});

struct BenchOptions {
  PolishConfig polish;
  double alpha = 0.15;
  SolveOptions solver;
  bool use_ppr_merge = true;
  /// Compute a built-in exact reference per instance (warm-started with
  /// the pipeline result); enables deviation and N_d columns.
  bool exact_reference = false;
  /// External reference costs keyed by instance file stem.
  std::map<std::string, double> reference_costs;
  int jobs = 1;
};

extern const char* const kBenchCsvHeader;

/// Runs the pipeline over every .json instance in the directory
/// (filename order) and writes one CSV row per instance plus an averages
/// row. Unreadable files produce a "failed" row; the run continues.
/// Returns the number of failed rows.
int bench(const std::filesystem::path& dir, const BenchOptions& opts, std::ostream& csv);

}  // namespace jra
