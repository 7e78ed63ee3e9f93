#include "oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace jra::testing {

OracleResult brute_force_dense(const DenseProblem& prob, const OracleConstraints& cons) {
  const int m = prob.m();
  OracleResult best;
  best.cost = std::numeric_limits<double>::max();

  // Constraint sets in local edge indices.
  std::vector<char> forced(m * m, 0), forbidden(m * m, 0), retain(m * m, 0);
  auto local = [&](const Edge& e) -> int {
    const auto it = std::find(prob.item_ids.begin(), prob.item_ids.end(), e.item);
    const auto pt =
        std::find(prob.placeholder_ids.begin(), prob.placeholder_ids.end(), e.placeholder);
    if (it == prob.item_ids.end() || pt == prob.placeholder_ids.end()) return -1;
    return static_cast<int>(it - prob.item_ids.begin()) * m +
           static_cast<int>(pt - prob.placeholder_ids.begin());
  };
  int forced_count = 0;
  for (const Edge& e : cons.forced) {
    const int k = local(e);
    if (k < 0) return best;  // unforceable
    if (!forced[k]) {
      forced[k] = 1;
      ++forced_count;
    }
  }
  for (const Edge& e : cons.forbidden) {
    const int k = local(e);
    if (k >= 0) forbidden[k] = 1;
  }
  if (cons.retain) {
    for (const Edge& e : *cons.retain) {
      const int k = local(e);
      if (k >= 0) retain[k] = 1;
    }
  }

  std::vector<int> items(m), phs(m);
  std::iota(items.begin(), items.end(), 0);
  std::iota(phs.begin(), phs.end(), 0);
  std::vector<int> cycle_edges(2 * m);

  // q_I[0] pinned to the first item; every undirected cycle still
  // appears (twice, once per direction).
  do {
    do {
      double cost = 0.0;
      int fcount = 0, rcount = 0;
      bool ok = true;
      for (int k = 0; k < m && ok; ++k) {
        const int i = items[k];
        const int p_prev = phs[(k + m - 1) % m];
        const int p_here = phs[k];
        const int e1 = i * m + p_prev;
        const int e2 = i * m + p_here;
        cycle_edges[2 * k] = e1;
        cycle_edges[2 * k + 1] = e2;
        if (forbidden[e1] || forbidden[e2]) ok = false;
        fcount += forced[e1] + forced[e2];
        rcount += retain[e1] + retain[e2];
        cost += prob.cost[e1] + prob.cost[e2];
      }
      if (!ok || fcount != forced_count) continue;
      if (cons.retain) {
        if (cons.retain_equality ? rcount != cons.retain_min : rcount < cons.retain_min) continue;
      }
      if (cost < best.cost) {
        best.feasible = true;
        best.cost = cost;
        best.edges = EdgeSet{};
        for (int e : cycle_edges) {
          best.edges.insert(prob.item_ids[e / m], prob.placeholder_ids[e % m]);
        }
      }
    } while (std::next_permutation(phs.begin(), phs.end()));
  } while (std::next_permutation(items.begin() + 1, items.end()));

  if (!best.feasible) best.cost = 0.0;
  return best;
}

OracleResult brute_force_instance(const Instance& inst, const OracleConstraints& cons) {
  OracleConstraints all = cons;
  if (inst.fixed_pair_enabled()) {
    all.forced.insert(inst.goal_item(), inst.start_placeholder());
  }
  return brute_force_dense(DenseProblem::full(inst), all);
}

double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::max();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Tour random_tour(const Instance& inst, std::uint64_t seed) {
  const int n = inst.n();
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Tour t;
  t.q_I.resize(n);
  t.q_P.resize(n);
  std::iota(t.q_I.begin(), t.q_I.end(), 1);
  std::iota(t.q_P.begin(), t.q_P.end(), n + 1);
  std::shuffle(t.q_I.begin(), t.q_I.end(), rng);
  std::shuffle(t.q_P.begin(), t.q_P.end(), rng);
  if (inst.fixed_pair_enabled()) {
    // Align so the goal item sits directly before the start placeholder.
    const auto gi = std::find(t.q_I.begin(), t.q_I.end(), inst.goal_item());
    const auto sp = std::find(t.q_P.begin(), t.q_P.end(), inst.start_placeholder());
    std::swap(*sp, t.q_P[gi - t.q_I.begin()]);
  }
  return t;
}

}  // namespace jra::testing
