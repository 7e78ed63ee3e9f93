#include "jra/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "jra/merging.hpp"
#include "jra/metrics.hpp"
#include "jra/ppr.hpp"

namespace jra {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PipelineResult run_pipeline(const Instance& inst, const PolishConfig& cfg, double alpha,
                            const SolveOptions& opts, bool use_ppr_merge,
                            const std::optional<Reference>& reference) {
  PipelineResult result;
  PipelineReport& report = result.report;
  report.n = inst.n();
  report.alpha = alpha;
  report.use_ppr_merge = use_ppr_merge;
  report.passes = cfg.passes;
  report.radius = effective_radius(cfg, inst);
  report.step = effective_step(cfg, inst);
  if (reference) report.reference_cost = reference->cost;

  auto record = [&](const std::string& name, const Tour& t, double secs) {
    StageReport stage;
    stage.name = name;
    stage.cost = tour_cost(inst, t);
    stage.seconds = secs;
    if (reference) {
      stage.deviation_pct = deviation_pct(stage.cost, reference->cost);
      if (reference->edges) {
        stage.edge_diff = edge_difference(edges_of(t), *reference->edges);
      }
    }
    report.stages.push_back(stage);
  };

  try {
    auto t0 = std::chrono::steady_clock::now();
    const CycleSet cycles = two_way_assign(inst);
    report.cycles = static_cast<int>(cycles.size());
    const MergeResult merged = merge_cycles(inst, cycles);
    report.collected = merged.collected.size();
    result.tour = merged.tour;
    record("merge", result.tour, seconds_since(t0));

    if (use_ppr_merge) {
      t0 = std::chrono::steady_clock::now();
      const RefineResult refined = refine_merge(inst, result.tour, merged.collected, opts);
      report.time_limited |= refined.time_limited;
      result.tour = refined.tour;
      record("ppr-merge", result.tour, seconds_since(t0));
    }

    PolishConfig pass_cfg = cfg;
    pass_cfg.passes = 1;
    for (int pass = 1; pass <= cfg.passes; ++pass) {
      t0 = std::chrono::steady_clock::now();
      PolishResult polished = polish(inst, result.tour, pass_cfg, opts);
      report.time_limited |= polished.stats.any_time_limited;
      result.tour = std::move(polished.tour);
      record("polish-" + std::to_string(pass), result.tour, seconds_since(t0));
    }

    t0 = std::chrono::steady_clock::now();
    const SolveResult large = solve_large_alpha(inst, result.tour, alpha, opts);
    if (large.status == SolveStatus::infeasible) {
      throw InternalConsistencyError("large-alpha solve lost its warm start");
    }
    report.time_limited |= large.status == SolveStatus::feasible_time_limit;
    result.tour = cycle_path(large.edges, inst.n());
    record("large-alpha", result.tour, seconds_since(t0));
  } catch (const Error&) {
    report.incomplete = true;
    if (report.stages.empty()) throw;  // nothing valid to return
  }

  report.final_cost = tour_cost(inst, result.tour);
  return result;
}

std::string PipelineReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["alpha"] = alpha;
  j["use_ppr_merge"] = use_ppr_merge;
  j["passes"] = passes;
  j["radius"] = radius;
  j["step"] = step;
  j["cycles"] = cycles;
  j["collected_nodes"] = collected;
  j["incomplete"] = incomplete;
  j["time_limited"] = time_limited;
  j["final_cost"] = final_cost;
  if (reference_cost) j["reference_cost"] = *reference_cost;
  j["stages"] = nlohmann::json::array();
  for (const StageReport& s : stages) {
    nlohmann::json js;
    js["name"] = s.name;
    js["cost"] = s.cost;
    js["time"] = s.seconds;
    if (s.deviation_pct) js["deviation_pct"] = *s.deviation_pct;
    if (s.edge_diff) js["n_d"] = *s.edge_diff;
    j["stages"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

const char* const kBenchCsvHeader =
    "instance,n,status,ref_cost,merge_cost,merge_dev,merge_time,"
    "ppr_merge_cost,ppr_merge_dev,ppr_merge_time,"
    "polish1_cost,polish1_dev,polish1_time,"
    "polish2_cost,polish2_dev,polish2_time,"
    "large_cost,large_dev,large_time,total_time,n_d";

namespace {

struct RowData {
  std::string text;
  bool failed = false;
  // numeric columns for the averages row, keyed by position
  std::vector<std::optional<double>> values;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

const std::vector<std::string> kStageOrder = {"merge", "ppr-merge", "polish-1", "polish-2",
                                              "large-alpha"};

RowData make_row(const std::string& name, const Instance& inst, const PipelineReport& report) {
  RowData row;
  const StageReport* stages[5] = {nullptr, nullptr, nullptr, nullptr, nullptr};
  for (const StageReport& s : report.stages) {
    for (std::size_t k = 0; k < kStageOrder.size(); ++k) {
      if (s.name == kStageOrder[k]) stages[k] = &s;
    }
    if (report.passes > 2 && s.name == "polish-" + std::to_string(report.passes)) {
      stages[3] = &s;  // fixed header: last pass lands in the polish2 columns
    }
  }
  std::string status = report.incomplete ? "incomplete"
                       : report.time_limited ? "time-limit"
                                             : "ok";
  row.text = name + "," + std::to_string(inst.n()) + "," + status;
  row.values.assign(18, std::nullopt);
  std::size_t vi = 0;
  auto add_num = [&](std::optional<double> v, bool fmt4 = true) {
    row.text += ",";
    if (v) {
      row.text += fmt4 ? fmt(*v) : std::to_string(static_cast<long long>(*v));
      row.values[vi] = *v;
    }
    ++vi;
  };
  auto add_dev = [&](const StageReport* s) {
    row.text += ",";
    if (s && s->deviation_pct) {
      row.text += format_deviation(*s->deviation_pct);
      row.values[vi] = *s->deviation_pct;
    }
    ++vi;
  };

  add_num(report.reference_cost);
  double total_time = 0.0;
  for (int k = 0; k < 5; ++k) {
    const StageReport* s = stages[k];
    add_num(s ? std::optional<double>(s->cost) : std::nullopt);
    add_dev(s);
    add_num(s ? std::optional<double>(s->seconds) : std::nullopt);
    if (s) total_time += s->seconds;
  }
  add_num(total_time);
  const StageReport* last = stages[4] ? stages[4] : nullptr;
  add_num(last && last->edge_diff ? std::optional<double>(*last->edge_diff) : std::nullopt,
          false);
  return row;
}

}  // namespace

int bench(const std::filesystem::path& dir, const BenchOptions& opts, std::ostream& csv) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::exists(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<RowData> rows(files.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= files.size()) break;
      const std::string stem = files[i].stem().string();
      try {
        const Instance inst = Instance::load(files[i]);
        std::optional<Reference> ref;
        if (auto it = opts.reference_costs.find(stem); it != opts.reference_costs.end()) {
          ref = Reference{it->second, std::nullopt};
        }
        PipelineResult run =
            run_pipeline(inst, opts.polish, opts.alpha, opts.solver, opts.use_ppr_merge, ref);
        if (!ref && opts.exact_reference) {
          SolveOptions exact_opts = opts.solver;
          exact_opts.warm_start = run.tour;
          const SolveResult exact = solve(inst, exact_opts);
          if (exact.status != SolveStatus::infeasible) {
            ref = Reference{exact.cost, exact.edges};
            run = run_pipeline(inst, opts.polish, opts.alpha, opts.solver, opts.use_ppr_merge,
                               ref);
            run.report.time_limited |= exact.status == SolveStatus::feasible_time_limit;
          }
        }
        rows[i] = make_row(stem, inst, run.report);
        rows[i].failed = run.report.incomplete;
      } catch (const std::exception& e) {
        rows[i].text = stem + ",,failed";
        for (int k = 0; k < 18; ++k) rows[i].text += ",";
        rows[i].failed = true;
        rows[i].values.assign(18, std::nullopt);
      }
    }
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  csv << kBenchCsvHeader << "\n";
  int failures = 0;
  for (const RowData& row : rows) {
    csv << row.text << "\n";
    if (row.failed) ++failures;
  }
  if (!rows.empty()) {
    // Averages over rows that produced each column.
    std::string avg = "average,,";
    for (std::size_t col = 0; col < 18; ++col) {
      double sum = 0.0;
      int count = 0;
      for (const RowData& row : rows) {
        if (col < row.values.size() && row.values[col]) {
          sum += *row.values[col];
          ++count;
        }
      }
      avg += ",";
      if (count > 0) {
        const double mean = sum / count;
        const bool is_dev = col == 2 || col == 5 || col == 8 || col == 11 || col == 14;
        avg += is_dev ? format_deviation(mean) : fmt(mean);
      }
    }
    csv << avg << "\n";
  }
  return failures;
}

}  // namespace jra
