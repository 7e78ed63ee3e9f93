// Command-line front end: instance generation, the solver stages, the
// full pipeline, benchmarking, and rendering.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jra/assignment.hpp"
#include "jra/exact_solver.hpp"
#include "jra/instance.hpp"
#include "jra/merging.hpp"
#include "jra/metrics.hpp"
#include "jra/pipeline.hpp"
#include "jra/ppr.hpp"
#include "jra/slppr.hpp"
#include "jra/svg.hpp"
#include "jra/tour.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitInternal = 4;

void write_text(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw jra::Error("cannot write output file: " + out);
  f << text;
}

std::map<std::string, double> load_reference_costs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw jra::SchemaError("cannot open reference file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw jra::SchemaError(std::string("malformed reference JSON: ") + e.what());
  }
  if (!j.is_object()) throw jra::SchemaError("reference JSON must map instance stems to costs");
  std::map<std::string, double> costs;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number()) {
      throw jra::SchemaError("reference cost for '" + it.key() + "' is not a number");
    }
    costs[it.key()] = it.value().get<double>();
  }
  return costs;
}

struct CommonFlags {
  std::string instance_file;
  std::string out;
  double time_limit = 60.0;
  bool verbose = false;
};

jra::SolveOptions solver_options(const CommonFlags& flags) {
  jra::SolveOptions opts;
  opts.time_limit = flags.time_limit;
  if (flags.verbose) opts.log = &std::cerr;
  return opts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint routing-assignment solver"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a uniform random instance");
  int gen_n = 30;
  std::uint64_t gen_seed = 0;
  double gen_area = 1.0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Pair count");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--area", gen_area, "Domain area in square meters");
  gen->add_option("--out,-o", gen_out, "Output file (default stdout)");

  // solve-exact
  auto* sx = app.add_subcommand("solve-exact", "Exact branch-and-cut solve");
  CommonFlags sx_flags;
  std::string sx_warm;
  sx->add_option("instance", sx_flags.instance_file, "Instance JSON")->required();
  sx->add_option("--time-limit", sx_flags.time_limit, "Seconds (<=0: unlimited)");
  sx->add_option("--warm", sx_warm, "Warm-start tour JSON");
  sx->add_option("--out,-o", sx_flags.out, "Tour output file");
  sx->add_flag("--verbose", sx_flags.verbose, "Log cuts and incumbents to stderr");

  // merge
  auto* mg = app.add_subcommand("merge", "Two-way assignment + cycle merging");
  CommonFlags mg_flags;
  mg->add_option("instance", mg_flags.instance_file, "Instance JSON")->required();
  mg->add_option("--out,-o", mg_flags.out, "Tour output file");

  // ppr-merge
  auto* pm = app.add_subcommand("ppr-merge", "Merge followed by PPR refinement");
  CommonFlags pm_flags;
  pm->add_option("instance", pm_flags.instance_file, "Instance JSON")->required();
  pm->add_option("--time-limit", pm_flags.time_limit, "Reduced-solve time limit");
  pm->add_option("--out,-o", pm_flags.out, "Tour output file");
  pm->add_flag("--verbose", pm_flags.verbose, "Log solver events to stderr");

  // polish
  auto* po = app.add_subcommand("polish", "Spatially localized polishing passes");
  CommonFlags po_flags;
  po_flags.time_limit = 5.0;
  std::string po_tour, po_stats;
  double po_radius = 0.2;
  int po_nstp = 3, po_passes = 2;
  po->add_option("instance", po_flags.instance_file, "Instance JSON")->required();
  po->add_option("--tour", po_tour, "Input tour JSON (default: merge result)");
  po->add_option("--radius", po_radius, "Circle radius in meters");
  po->add_option("--nstp", po_nstp, "Way-point step length");
  po->add_option("--passes", po_passes, "Polishing passes");
  po->add_option("--time-limit", po_flags.time_limit, "Per-circle time limit");
  po->add_option("--stats", po_stats, "Polish statistics JSON output file");
  po->add_option("--out,-o", po_flags.out, "Tour output file");
  po->add_flag("--verbose", po_flags.verbose, "Log solver events to stderr");

  // large-alpha
  auto* la = app.add_subcommand("large-alpha", "Constrained refinement of an incumbent tour");
  CommonFlags la_flags;
  std::string la_tour;
  double la_alpha = 0.15;
  la->add_option("instance", la_flags.instance_file, "Instance JSON")->required();
  la->add_option("--tour", la_tour, "Incumbent tour JSON")->required();
  la->add_option("--alpha", la_alpha, "Fraction of exchangeable edges, (0, 1]");
  la->add_option("--time-limit", la_flags.time_limit, "Seconds (<=0: unlimited)");
  la->add_option("--out,-o", la_flags.out, "Tour output file");
  la->add_flag("--verbose", la_flags.verbose, "Log solver events to stderr");

  // pipeline
  auto* pl = app.add_subcommand("pipeline", "merge -> ppr-merge -> polish -> large-alpha");
  CommonFlags pl_flags;
  pl_flags.time_limit = 5.0;
  double pl_alpha = 0.15, pl_radius = 0.2;
  int pl_nstp = 3, pl_passes = 2;
  bool pl_no_ppr = false;
  std::string pl_report, pl_ref;
  pl->add_option("instance", pl_flags.instance_file, "Instance JSON")->required();
  pl->add_option("--alpha", pl_alpha, "Large-alpha fraction");
  pl->add_option("--radius", pl_radius, "Polish circle radius");
  pl->add_option("--nstp", pl_nstp, "Polish step length");
  pl->add_option("--passes", pl_passes, "Polish passes");
  pl->add_option("--time-limit", pl_flags.time_limit, "Per-solve time limit");
  pl->add_flag("--no-ppr-merge", pl_no_ppr, "Skip the PPR merge refinement stage");
  pl->add_option("--ref", pl_ref, "Reference costs JSON (stem -> cost)");
  pl->add_option("--report", pl_report, "Pipeline report JSON output file");
  pl->add_option("--out,-o", pl_flags.out, "Final tour output file");
  pl->add_flag("--verbose", pl_flags.verbose, "Log solver events to stderr");

  // bench
  auto* be = app.add_subcommand("bench", "Pipeline over a directory of instances, CSV report");
  std::string be_dir, be_out, be_ref;
  double be_alpha = 0.15, be_radius = 0.2, be_time = 5.0;
  int be_nstp = 3, be_passes = 2, be_jobs = 1;
  bool be_no_ppr = false, be_exact_ref = false;
  be->add_option("dir", be_dir, "Directory of instance .json files")->required();
  be->add_option("--alpha", be_alpha, "Large-alpha fraction");
  be->add_option("--radius", be_radius, "Polish circle radius");
  be->add_option("--nstp", be_nstp, "Polish step length");
  be->add_option("--passes", be_passes, "Polish passes");
  be->add_option("--time-limit", be_time, "Per-solve time limit");
  be->add_flag("--no-ppr-merge", be_no_ppr, "Skip the PPR merge refinement stage");
  be->add_option("--ref", be_ref, "Reference costs JSON (stem -> cost)");
  be->add_flag("--exact-ref", be_exact_ref, "Compute built-in exact references");
  be->add_option("--jobs", be_jobs, "Parallel instances");
  be->add_option("--out,-o", be_out, "CSV output file (default stdout)");

  // render
  auto* re = app.add_subcommand("render", "Render instance and tours to SVG");
  std::string re_instance, re_out;
  std::vector<std::string> re_tours;
  re->add_option("instance", re_instance, "Instance JSON")->required();
  re->add_option("--tour", re_tours, "Tour JSON (repeatable, overlaid in palette order)");
  re->add_option("--out,-o", re_out, "SVG output file")->required();

  // export-lp
  auto* xl = app.add_subcommand("export-lp", "Write the model in LP text format");
  std::string xl_instance, xl_out;
  xl->add_option("instance", xl_instance, "Instance JSON")->required();
  xl->add_option("--out,-o", xl_out, "LP output file")->required();

  // analyze-kopt
  auto* ak = app.add_subcommand("analyze-kopt", "k-opt move-type and neighborhood counts");
  int ak_k = 0, ak_n = 0;
  double ak_alpha = 0.15;
  ak->add_option("--k", ak_k, "Print MT(k)");
  ak->add_option("--n", ak_n, "Pair count for the neighborhood size");
  ak->add_option("--alpha", ak_alpha, "Alpha for the neighborhood size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*gen) {
      const jra::Instance inst = jra::Instance::generate(gen_n, gen_seed, gen_area);
      write_text(inst.to_json_string(), gen_out);
      return kExitOk;
    }
    if (*sx) {
      const jra::Instance inst = jra::Instance::load(sx_flags.instance_file);
      jra::SolveOptions opts = solver_options(sx_flags);
      if (!sx_warm.empty()) opts.warm_start = jra::load_tour(sx_warm);
      const jra::SolveResult res = jra::solve(inst, opts);
      if (res.status == jra::SolveStatus::infeasible) {
        std::cerr << "infeasible\n";
        return kExitInvalidInput;
      }
      const jra::Tour tour = jra::cycle_path(res.edges, inst.n());
      std::cerr << "status " << jra::to_string(res.status) << " cost " << res.cost << " nodes "
                << res.stats.branch_nodes << " cuts " << res.stats.subtour_cuts_added << " time "
                << res.stats.wall_time << "\n";
      write_text(jra::tour_to_json(inst, tour), sx_flags.out);
      return res.status == jra::SolveStatus::optimal ? kExitOk : kExitTimeLimit;
    }
    if (*mg) {
      const jra::Instance inst = jra::Instance::load(mg_flags.instance_file);
      const jra::CycleSet cycles = jra::two_way_assign(inst);
      const jra::MergeResult merged = jra::merge_cycles(inst, cycles);
      std::cerr << "cycles " << cycles.size() << " collected " << merged.collected.size()
                << " cost " << jra::tour_cost(inst, merged.tour) << "\n";
      write_text(jra::tour_to_json(inst, merged.tour), mg_flags.out);
      return kExitOk;
    }
    if (*pm) {
      const jra::Instance inst = jra::Instance::load(pm_flags.instance_file);
      const jra::MergeResult merged = jra::merge_cycles(inst, jra::two_way_assign(inst));
      const jra::RefineResult refined =
          jra::refine_merge(inst, merged.tour, merged.collected, solver_options(pm_flags));
      std::cerr << "merge cost " << jra::tour_cost(inst, merged.tour) << " refined cost "
                << jra::tour_cost(inst, refined.tour) << "\n";
      write_text(jra::tour_to_json(inst, refined.tour), pm_flags.out);
      return refined.time_limited ? kExitTimeLimit : kExitOk;
    }
    if (*po) {
      const jra::Instance inst = jra::Instance::load(po_flags.instance_file);
      jra::Tour start;
      if (po_tour.empty()) {
        start = jra::merge_cycles(inst, jra::two_way_assign(inst)).tour;
      } else {
        start = jra::load_tour(po_tour);
      }
      jra::PolishConfig cfg;
      cfg.radius = po_radius;
      cfg.n_stp = po_nstp;
      cfg.passes = po_passes;
      const jra::PolishResult res = jra::polish(inst, start, cfg, solver_options(po_flags));
      std::cerr << "polish " << res.stats.initial_cost << " -> " << res.stats.final_cost << "\n";
      if (!po_stats.empty()) write_text(res.stats.to_json(), po_stats);
      write_text(jra::tour_to_json(inst, res.tour), po_flags.out);
      return res.stats.any_time_limited ? kExitTimeLimit : kExitOk;
    }
    if (*la) {
      const jra::Instance inst = jra::Instance::load(la_flags.instance_file);
      const jra::Tour incumbent = jra::load_tour(la_tour);
      const jra::SolveResult res =
          jra::solve_large_alpha(inst, incumbent, la_alpha, solver_options(la_flags));
      if (res.status == jra::SolveStatus::infeasible) {
        std::cerr << "infeasible\n";
        return kExitInvalidInput;
      }
      const jra::Tour tour = jra::cycle_path(res.edges, inst.n());
      std::cerr << "status " << jra::to_string(res.status) << " cost " << res.cost << "\n";
      write_text(jra::tour_to_json(inst, tour), la_flags.out);
      return res.status == jra::SolveStatus::optimal ? kExitOk : kExitTimeLimit;
    }
    if (*pl) {
      const jra::Instance inst = jra::Instance::load(pl_flags.instance_file);
      jra::PolishConfig cfg;
      cfg.radius = pl_radius;
      cfg.n_stp = pl_nstp;
      cfg.passes = pl_passes;
      std::optional<jra::Reference> ref;
      if (!pl_ref.empty()) {
        const auto costs = load_reference_costs(pl_ref);
        const std::string stem = std::filesystem::path(pl_flags.instance_file).stem().string();
        if (auto it = costs.find(stem); it != costs.end()) ref = jra::Reference{it->second, {}};
      }
      const jra::PipelineResult res =
          jra::run_pipeline(inst, cfg, pl_alpha, solver_options(pl_flags), !pl_no_ppr, ref);
      std::cerr << res.report.to_json();
      if (!pl_report.empty()) write_text(res.report.to_json(), pl_report);
      write_text(jra::tour_to_json(inst, res.tour), pl_flags.out);
      if (res.report.incomplete) return kExitInternal;
      return res.report.time_limited ? kExitTimeLimit : kExitOk;
    }
    if (*be) {
      jra::BenchOptions opts;
      opts.polish.radius = be_radius;
      opts.polish.n_stp = be_nstp;
      opts.polish.passes = be_passes;
      opts.alpha = be_alpha;
      opts.solver.time_limit = be_time;
      opts.use_ppr_merge = !be_no_ppr;
      opts.exact_reference = be_exact_ref;
      opts.jobs = be_jobs;
      if (!be_ref.empty()) opts.reference_costs = load_reference_costs(be_ref);
      std::ostringstream csv;
      const int failures = jra::bench(be_dir, opts, csv);
      write_text(csv.str(), be_out);
      return failures == 0 ? kExitOk : kExitInternal;
    }
    if (*re) {
      const jra::Instance inst = jra::Instance::load(re_instance);
      static const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd"};
      std::vector<std::pair<jra::Tour, jra::TourStyle>> tours;
      for (std::size_t i = 0; i < re_tours.size(); ++i) {
        jra::TourStyle style;
        style.stroke = kPalette[i % 4];
        tours.emplace_back(jra::load_tour(re_tours[i]), style);
      }
      jra::render_svg(inst, tours, re_out);
      return kExitOk;
    }
    if (*xl) {
      const jra::Instance inst = jra::Instance::load(xl_instance);
      jra::export_lp(inst, {}, xl_out);
      return kExitOk;
    }
    if (*ak) {
      if (ak_k >= 2) {
        std::cout << "MT(" << ak_k << ") = " << jra::kopt_move_types(ak_k).to_string() << "\n";
      }
      if (ak_n > 0) {
        const jra::NeighborhoodSize size = jra::large_alpha_neighborhood(ak_n, ak_alpha);
        std::cout << "N_total(alpha=" << ak_alpha << ", n=" << ak_n << ")";
        if (size.exact) {
          std::cout << " = " << size.exact->to_string();
        }
        std::cout << " ~ 1e" << size.log10_magnitude << "\n";
      }
      return kExitOk;
    }
  } catch (const jra::InternalConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const jra::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
