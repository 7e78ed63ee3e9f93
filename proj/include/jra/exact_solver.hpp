#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "jra/instance.hpp"
#include "jra/tour.hpp"

namespace jra {

enum class SolveStatus { optimal, feasible_time_limit, infeasible };

const char* to_string(SolveStatus s);

struct SolveStats {
  long branch_nodes = 0;
  long subtour_cuts_added = 0;
  double wall_time = 0.0;
};

/// Options for the exact solve. forced/forbidden/retain/warm sets use
/// original node ids. retain_min is the minimum number of retain_set
/// edges that must appear in the solution (>= becomes == when
/// retain_equality is set). time_limit <= 0 means unlimited.
struct SolveOptions {
  double time_limit = 60.0;
  EdgeSet forced_edges;
  EdgeSet forbidden_edges;
  std::optional<EdgeSet> retain_set;
  int retain_min = 0;
  bool retain_equality = false;
  std::optional<Tour> warm_start;
  double gap_tolerance = 0.0;
  std::ostream* log = nullptr;
};

struct SolveResult {
  EdgeSet edges;
  double cost = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  SolveStats stats;
};

/// Dense view of a (sub)problem: m items and m placeholders carrying
/// their original ids, with a full m x m cost matrix. Reduced problems
/// built by the PPR machinery use the same solver through this view.
struct DenseProblem {
  std::vector<NodeId> item_ids;
  std::vector<NodeId> placeholder_ids;
  std::vector<double> cost;  // row-major, cost[i * m + p]

  int m() const { return static_cast<int>(item_ids.size()); }
  double at(int i, int p) const { return cost[static_cast<std::size_t>(i) * m() + p]; }

  static DenseProblem full(const Instance& inst);
};

/// Same as SolveOptions but warm start given as an edge set, which is
/// the natural form for reduced problems.
struct DenseSolveOptions {
  double time_limit = 60.0;
  EdgeSet forced_edges;
  EdgeSet forbidden_edges;
  std::optional<EdgeSet> retain_set;
  int retain_min = 0;
  bool retain_equality = false;
  std::optional<EdgeSet> warm_edges;
  double gap_tolerance = 0.0;
  std::ostream* log = nullptr;
};

/// Exact minimum-cost alternating Hamiltonian cycle under the active
/// constraints. Branch and bound on binary edge selection; the bound is
/// a min-cost 2-regular bipartite relaxation (successive shortest path
/// transportation solve) that ignores connectivity. Disconnected
/// integral relaxation solutions trigger lazy subtour elimination on the
/// smallest violating component. The fixed pair (n, 2n) is forced when
/// the instance enables it.
SolveResult solve(const Instance& inst, const SolveOptions& opts = {});

SolveResult solve_dense(const DenseProblem& prob, const DenseSolveOptions& opts);

/// Large-alpha refinement: retain at least ceil(2n(1-alpha)) edges of the
/// incumbent while re-optimizing, warm-started at the incumbent.
SolveResult solve_large_alpha(const Instance& inst, const Tour& incumbent, double alpha,
                              SolveOptions opts = {});

/// ceil(2n(1-alpha)), the Large-alpha retain bound.
int retain_bound(int n, double alpha);

/// Writes the model in LP text format. Subtour elimination constraints
/// are omitted (a header comment notes the lazy enforcement).
void export_lp(const Instance& inst, const SolveOptions& opts, const std::filesystem::path& file);

}  // namespace jra
