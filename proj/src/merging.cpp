#include "jra/merging.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace jra {

namespace {

struct Candidate {
  double delta = std::numeric_limits<double>::max();
  Edge a, b;  // a <= b lexicographically
  int cycle_a = -1, cycle_b = -1;

  bool better_than(const Candidate& other) const {
    if (delta != other.delta) return delta < other.delta;
    if (a != other.a) return a < other.a;
    return b < other.b;
  }
};

}  // namespace

MergeResult merge_cycles(const Instance& inst, const CycleSet& cs) {
  if (cs.cycles.empty()) {
    throw ValidationError("merge_cycles requires a non-empty cycle set");
  }
  const int n = inst.n();
  const bool keep_fixed = inst.fixed_pair_enabled();
  const Edge fixed_edge{inst.goal_item(), inst.start_placeholder()};

  // Cycles as plain edge lists; membership is all that matters here.
  std::vector<std::vector<Edge>> groups;
  groups.reserve(cs.size());
  for (const Cycle& c : cs.cycles) {
    std::vector<Edge> edges;
    for (const Edge& e : c.edges()) {
      edges.push_back(e);
    }
    groups.push_back(std::move(edges));
  }

  MergeResult result;
  while (groups.size() > 1) {
    Candidate best;
    for (std::size_t ga = 0; ga < groups.size(); ++ga) {
      for (std::size_t gb = ga + 1; gb < groups.size(); ++gb) {
        for (const Edge& ea : groups[ga]) {
          if (keep_fixed && ea == fixed_edge) continue;
          for (const Edge& eb : groups[gb]) {
            if (keep_fixed && eb == fixed_edge) continue;
            // Cross-link the broken edges the alternation-valid way.
            const double delta = inst.cost(ea.item, eb.placeholder) +
                                 inst.cost(eb.item, ea.placeholder) -
                                 inst.cost(ea.item, ea.placeholder) -
                                 inst.cost(eb.item, eb.placeholder);
            Candidate cand;
            cand.delta = delta;
            // Normalized edge order for tie-breaking; reconnection is
            // symmetric, so cycle indices swap along.
            if (eb < ea) {
              cand.a = eb;
              cand.b = ea;
              cand.cycle_a = static_cast<int>(gb);
              cand.cycle_b = static_cast<int>(ga);
            } else {
              cand.a = ea;
              cand.b = eb;
              cand.cycle_a = static_cast<int>(ga);
              cand.cycle_b = static_cast<int>(gb);
            }
            if (cand.better_than(best)) {
              best = cand;
            }
          }
        }
      }
    }
    if (best.cycle_a < 0) {
      throw ValidationError("no mergeable edge pair found across cycles");
    }

    auto& ca = groups[best.cycle_a];
    auto& cb = groups[best.cycle_b];
    ca.erase(std::find(ca.begin(), ca.end(), best.a));
    cb.erase(std::find(cb.begin(), cb.end(), best.b));
    ca.push_back({best.a.item, best.b.placeholder});
    ca.push_back({best.b.item, best.a.placeholder});
    ca.insert(ca.end(), cb.begin(), cb.end());
    groups.erase(groups.begin() + best.cycle_b);

    result.collected.insert(best.a.item);
    result.collected.insert(best.a.placeholder);
    result.collected.insert(best.b.item);
    result.collected.insert(best.b.placeholder);
    ++result.merges;
  }

  EdgeSet final_edges;
  for (const Edge& e : groups.front()) {
    final_edges.insert(e);
  }
  result.tour = cycle_path(final_edges, n);
  return result;
}

}  // namespace jra
