#pragma once

#include <limits>
#include <vector>

#include "jra/instance.hpp"
#include "jra/tour.hpp"

namespace jra {

/// Sentinel for forbidden cells in assignment cost matrices.
constexpr double kForbiddenCost = std::numeric_limits<double>::infinity();

struct HungarianResult {
  std::vector<int> assignment;  // assignment[row] = column
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square matrix, O(n^3) potentials
/// method. Forbidden cells carry kForbiddenCost; ties resolve to the
/// lowest column index. Throws InfeasibleError when no finite-cost
/// perfect matching exists.
HungarianResult hungarian(const std::vector<std::vector<double>>& cost);

/// One alternating cycle, closed on itself: items[k] is adjacent to
/// placeholders[k-1] (cyclic) and placeholders[k].
struct Cycle {
  std::vector<NodeId> items;
  std::vector<NodeId> placeholders;

  int pairs() const { return static_cast<int>(items.size()); }
  EdgeSet edges() const;
};

/// Node-disjoint alternating cycles covering all 2n nodes.
struct CycleSet {
  std::vector<Cycle> cycles;

  std::size_t size() const { return cycles.size(); }
  EdgeSet all_edges() const;
};

/// Forward Hungarian pass items->placeholders, then a backward pass
/// placeholders->items with the forward cells forbidden; the union is
/// 2-regular and decomposes into alternating cycles. The fixed pair
/// (n, 2n) is pinned in the forward pass when enabled.
CycleSet two_way_assign(const Instance& inst);

/// Partition of a 2-regular edge set into maximal alternating cycles,
/// sorted by smallest contained item id. Throws DegreeError otherwise.
CycleSet detect_cycles(const EdgeSet& edges, int n);

}  // namespace jra
