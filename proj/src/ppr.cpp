#include "jra/ppr.hpp"

#include <algorithm>
#include <cmath>

namespace jra {

int ReducedProblem::child_pairs() const {
  int free_items = 0;
  for (NodeId v : free_nodes) {
    if (v <= n) ++free_items;
  }
  return free_items + static_cast<int>(segments.size());
}

ReducedProblem break_tour(const Instance& inst, const Tour& t, const std::set<NodeId>& v_s) {
  validate_tour(inst, t);
  if (v_s.empty()) {
    throw ValidationError("break_tour requires a non-empty node selection");
  }
  const int n = inst.n();
  for (NodeId v : v_s) {
    if (v < 1 || v > 2 * n) {
      throw ValidationError("selected node " + std::to_string(v) + " out of range");
    }
  }

  ReducedProblem rp;
  rp.n = n;
  rp.fixed_pair = inst.fixed_pair_enabled();
  rp.free_nodes = v_s;

  const EdgeSet tour_edges = edges_of(t);
  auto is_free = [&rp](NodeId v) { return rp.free_nodes.count(v) > 0; };

  // Surviving adjacency after removing every edge incident to a free node.
  std::vector<std::vector<NodeId>> adj(2 * n + 1);
  for (const Edge& e : tour_edges) {
    if (is_free(e.item) || is_free(e.placeholder)) {
      rp.removed.insert(e);
    } else {
      adj[e.item].push_back(e.placeholder);
      adj[e.placeholder].push_back(e.item);
    }
  }

  auto degree = [&adj](NodeId v) { return adj[v].size(); };
  auto drop_node = [&](NodeId v) {
    // Release v: its remaining edges become removed.
    for (NodeId u : adj[v]) {
      auto& back = adj[u];
      back.erase(std::find(back.begin(), back.end(), v));
      if (v <= n) {
        rp.removed.insert(v, u);
      } else {
        rp.removed.insert(u, v);
      }
    }
    adj[v].clear();
    rp.free_nodes.insert(v);
  };

  // Lone survivors carry no structure; release them.
  for (NodeId v = 1; v <= 2 * n; ++v) {
    if (!is_free(v) && degree(v) == 0) {
      rp.free_nodes.insert(v);
    }
  }

  // Walk the surviving paths from their endpoints, normalizing same-type
  // endpoints by releasing the smaller-id end.
  std::vector<bool> claimed(2 * n + 1, false);
  for (NodeId start = 1; start <= 2 * n; ++start) {
    if (claimed[start] || is_free(start) || degree(start) != 1) continue;
    std::vector<NodeId> path{start};
    claimed[start] = true;
    NodeId prev = 0, at = start;
    while (true) {
      NodeId next = 0;
      for (NodeId u : adj[at]) {
        if (u != prev) {
          next = u;
          break;
        }
      }
      if (next == 0) break;
      path.push_back(next);
      claimed[next] = true;
      prev = at;
      at = next;
    }

    const bool front_item = path.front() <= n;
    const bool back_item = path.back() <= n;
    if (front_item == back_item) {
      const NodeId victim = std::min(path.front(), path.back());
      drop_node(victim);
      if (victim == path.front()) {
        path.erase(path.begin());
      } else {
        path.pop_back();
      }
    }

    Segment seg;
    if (path.front() > n) {
      std::reverse(path.begin(), path.end());
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      if (path[k] <= n) {
        seg.items.push_back(path[k]);
      } else {
        seg.placeholders.push_back(path[k]);
      }
      if (k > 0) {
        const NodeId a = path[k - 1], b = path[k];
        seg.interior.insert(std::min(a, b), std::max(a, b));
      }
    }
    seg.start_item = seg.items.front();
    seg.end_placeholder = seg.placeholders.back();
    seg.single_pair = seg.items.size() == 1;
    if (seg.items.size() != seg.placeholders.size()) {
      throw InternalConsistencyError("segment item/placeholder counts diverged");
    }
    rp.segments.push_back(std::move(seg));
  }

  std::sort(rp.segments.begin(), rp.segments.end(),
            [](const Segment& a, const Segment& b) { return a.start_item < b.start_item; });

  for (const Segment& seg : rp.segments) {
    for (const Edge& e : seg.interior) {
      rp.reserved.insert(e);
      rp.offset_cost += inst.cost(e.item, e.placeholder);
    }
    if (!seg.single_pair) {
      rp.temporary.insert(seg.start_item, seg.end_placeholder);
    }
  }

  // Exact edge accounting: every original edge is reserved or removed.
  if (rp.reserved.size() + rp.removed.size() != static_cast<std::size_t>(2 * n)) {
    throw InternalConsistencyError("edge accounting mismatch after break");
  }

  if (rp.fixed_pair) {
    const Edge fixed{inst.goal_item(), inst.start_placeholder()};
    rp.fixed_edge_in_child = !rp.reserved.contains(fixed);
  }

  if (rp.child_pairs() < 2) {
    throw DegenerateError("reduced problem has fewer than 2 effective pairs");
  }
  return rp;
}

DenseProblem reduced_dense(const Instance& inst, const ReducedProblem& rp) {
  const int n = rp.n;
  DenseProblem child;
  for (NodeId v : rp.free_nodes) {
    if (v <= n) {
      child.item_ids.push_back(v);
    } else {
      child.placeholder_ids.push_back(v);
    }
  }
  for (const Segment& seg : rp.segments) {
    child.item_ids.push_back(seg.start_item);
    child.placeholder_ids.push_back(seg.end_placeholder);
  }
  std::sort(child.item_ids.begin(), child.item_ids.end());
  std::sort(child.placeholder_ids.begin(), child.placeholder_ids.end());
  const int m = child.m();
  if (static_cast<int>(child.placeholder_ids.size()) != m) {
    throw InternalConsistencyError("reduced problem item/placeholder counts diverged");
  }

  child.cost.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < m; ++p) {
      child.cost[static_cast<std::size_t>(i) * m + p] =
          inst.cost(child.item_ids[i], child.placeholder_ids[p]);
    }
  }
  // Segment joins are traversed through reserved interiors; their cost
  // lives in offset_cost, so the child sees them at zero.
  for (const Segment& seg : rp.segments) {
    const auto it =
        std::lower_bound(child.item_ids.begin(), child.item_ids.end(), seg.start_item);
    const auto pt = std::lower_bound(child.placeholder_ids.begin(), child.placeholder_ids.end(),
                                     seg.end_placeholder);
    const int i = static_cast<int>(it - child.item_ids.begin());
    const int p = static_cast<int>(pt - child.placeholder_ids.begin());
    child.cost[static_cast<std::size_t>(i) * m + p] = 0.0;
  }
  return child;
}

ReducedSolveResult solve_reduced(const Instance& inst, const ReducedProblem& rp,
                                 const SolveOptions& opts) {
  const DenseProblem child = reduced_dense(inst, rp);

  DenseSolveOptions dense;
  dense.time_limit = opts.time_limit;
  dense.gap_tolerance = opts.gap_tolerance;
  dense.log = opts.log;
  dense.forced_edges = opts.forced_edges;
  dense.forbidden_edges = opts.forbidden_edges;
  dense.retain_set = opts.retain_set;
  dense.retain_min = opts.retain_min;
  dense.retain_equality = opts.retain_equality;
  for (const Segment& seg : rp.segments) {
    dense.forced_edges.insert(seg.start_item, seg.end_placeholder);
  }
  if (rp.fixed_edge_in_child) {
    dense.forced_edges.insert(rp.n, 2 * rp.n);
  }

  // The incumbent connection pattern is always feasible in the child.
  EdgeSet warm = rp.removed;
  for (const Edge& e : dense.forced_edges) {
    warm.insert(e);
  }
  dense.warm_edges = std::move(warm);

  const SolveResult res = solve_dense(child, dense);
  ReducedSolveResult out;
  out.edges = res.edges;
  out.objective = res.cost;
  out.status = res.status;
  out.stats = res.stats;
  return out;
}

Tour recover(const ReducedProblem& rp, const EdgeSet& l_n, int n) {
  EdgeSet unified = rp.reserved;
  for (const Edge& e : l_n) {
    if (!rp.temporary.contains(e)) {
      unified.insert(e);
    }
  }
  try {
    return cycle_path(unified, n);
  } catch (const Error& e) {
    throw InternalConsistencyError(std::string("recovered edge set invalid: ") + e.what());
  }
}

RefineResult refine_merge(const Instance& inst, const Tour& t, const NodeCollector& collected,
                          const SolveOptions& opts) {
  RefineResult out;
  if (collected.empty()) {
    out.tour = t;
    return out;
  }
  const double before = tour_cost(inst, t);
  const ReducedProblem rp = break_tour(inst, t, collected);
  const ReducedSolveResult res = solve_reduced(inst, rp, opts);
  if (res.status == SolveStatus::infeasible) {
    throw InternalConsistencyError("reduced solve reported infeasible despite a warm start");
  }
  out.tour = recover(rp, res.edges, inst.n());
  out.time_limited = res.status == SolveStatus::feasible_time_limit;
  out.stats = res.stats;
  const double after = tour_cost(inst, out.tour);
  if (after > before + 1e-9) {
    throw InternalConsistencyError("merge refinement worsened the tour");
  }
  if (std::abs(after - (res.objective + rp.offset_cost)) > 1e-6) {
    throw InternalConsistencyError("recovered cost does not match objective + offset");
  }
  return out;
}

}  // namespace jra
