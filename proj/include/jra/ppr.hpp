#pragma once

#include <set>
#include <vector>

#include "jra/exact_solver.hpp"
#include "jra/instance.hpp"
#include "jra/merging.hpp"
#include "jra/tour.hpp"

namespace jra {

/// Maximal alternating path surviving a break, contracted to its two
/// boundary nodes for the reduced problem. Ordered from the item end:
/// items[0] == start_item, placeholders.back() == end_placeholder.
struct Segment {
  std::vector<NodeId> items;
  std::vector<NodeId> placeholders;
  NodeId start_item = 0;
  NodeId end_placeholder = 0;
  EdgeSet interior;
  bool single_pair = false;
};

/// Output of break_tour: everything needed to build, solve, and undo the
/// reduced problem.
struct ReducedProblem {
  std::vector<Segment> segments;
  std::set<NodeId> free_nodes;  // released nodes, including normalization moves
  EdgeSet reserved;             // L_r: interior edges, fixed during the reduced solve
  EdgeSet temporary;            // L_t: synthetic (start_item, end_placeholder) joins
  EdgeSet removed;              // original tour edges deleted by the break
  double offset_cost = 0.0;     // sum of interior edge costs, excluded from the objective
  int n = 0;
  bool fixed_pair = false;
  bool fixed_edge_in_child = false;  // (n, 2n) re-imposed as a forced edge

  /// Pair count of the reduced problem.
  int child_pairs() const;
};

/// Removes both incident edges of every node in v_s and contracts the
/// surviving alternating paths. Fragments with same-type endpoints are
/// normalized by releasing the smaller-id endpoint as well; lone
/// surviving nodes are released too.
ReducedProblem break_tour(const Instance& inst, const Tour& t, const std::set<NodeId>& v_s);

/// Builds the reduced instance view (temporary joins forced at zero
/// cost) for a reduced problem.
DenseProblem reduced_dense(const Instance& inst, const ReducedProblem& rp);

struct ReducedSolveResult {
  EdgeSet edges;  // L_n: active edges of the reduced solution
  double objective = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  SolveStats stats;
};

/// Exact solve of the reduced problem. Warm-started with the incumbent
/// connection pattern, so the result never exceeds the input tour's
/// cost. opts.warm_start is ignored here (it describes a full tour);
/// forced/forbidden/retain sets pass through.
ReducedSolveResult solve_reduced(const Instance& inst, const ReducedProblem& rp,
                                 const SolveOptions& opts = {});

/// L* = (L_n \ L_t) u L_r, reconstructed into a full tour. Throws
/// InternalConsistencyError when the union fails validation.
Tour recover(const ReducedProblem& rp, const EdgeSet& l_n, int n);

struct RefineResult {
  Tour tour;
  bool time_limited = false;
  SolveStats stats;
};

/// Merge refinement: break the tour at the merge collector nodes, solve
/// the reduced problem exactly, recover. Never worsens the tour; returns
/// the input unchanged when the collector is empty.
RefineResult refine_merge(const Instance& inst, const Tour& t, const NodeCollector& collected,
                          const SolveOptions& opts = {});

}  // namespace jra
