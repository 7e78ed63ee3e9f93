#pragma once

#include <set>

#include "jra/assignment.hpp"
#include "jra/instance.hpp"
#include "jra/tour.hpp"

namespace jra {

/// Nodes touched by any merge reconnection; empty iff the input already
/// had a single cycle.
using NodeCollector = std::set<NodeId>;

struct MergeResult {
  Tour tour;
  NodeCollector collected;
  int merges = 0;
};

/// Greedy cycle merging: repeatedly applies the cheapest
/// alternation-preserving 2-edge reconnection between two cycles until a
/// single tour remains, collecting the four reconnection nodes each time.
/// The fixed pair edge (n, 2n) is never removed when enabled.
/// Ties break lexicographically on the edge node ids.
MergeResult merge_cycles(const Instance& inst, const CycleSet& cs);

}  // namespace jra
