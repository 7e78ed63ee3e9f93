#include "jra/assignment.hpp"

#include <algorithm>
#include <cmath>

namespace jra {

namespace {

// Large finite stand-in for forbidden cells; keeps the potential updates
// free of inf - inf arithmetic.
constexpr double kBig = 1e100;
constexpr double kBigThreshold = 1e50;

}  // namespace

HungarianResult hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  if (n == 0) {
    return {};
  }
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) {
      throw DomainError("hungarian requires a square cost matrix");
    }
    for (double c : row) {
      if (std::isnan(c)) {
        throw DomainError("hungarian cost matrix contains NaN");
      }
    }
  }

  auto at = [&cost](int r, int c) {
    const double v = cost[r][c];
    return std::isinf(v) ? kBig : v;
  };

  // Potentials method over 1-based arrays; p[j] is the row matched to
  // column j, column 0 is the virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::max());
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::max();
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 < 0 || delta > kBigThreshold) {
        throw InfeasibleError("no finite-cost perfect matching exists");
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  HungarianResult result;
  result.assignment.assign(n, -1);
  for (int j = 1; j <= n; ++j) {
    result.assignment[p[j] - 1] = j - 1;
  }
  for (int i = 0; i < n; ++i) {
    const double c = cost[i][result.assignment[i]];
    if (std::isinf(c) || c > kBigThreshold) {
      throw InfeasibleError("no finite-cost perfect matching exists");
    }
    result.cost += c;
  }
  return result;
}

EdgeSet Cycle::edges() const {
  EdgeSet out;
  const int k = pairs();
  for (int j = 0; j < k; ++j) {
    out.insert(items[j], placeholders[(j + k - 1) % k]);
    out.insert(items[j], placeholders[j]);
  }
  return out;
}

EdgeSet CycleSet::all_edges() const {
  EdgeSet out;
  for (const Cycle& c : cycles) {
    for (const Edge& e : c.edges()) {
      out.insert(e);
    }
  }
  return out;
}

CycleSet two_way_assign(const Instance& inst) {
  const int n = inst.n();

  std::vector<std::vector<double>> forward(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int p = 0; p < n; ++p) {
      forward[i][p] = inst.cost(i + 1, n + p + 1);
    }
  }
  if (inst.fixed_pair_enabled()) {
    // Pin (n, 2n): forbid every alternative in its row and column.
    for (int p = 0; p + 1 < n; ++p) forward[n - 1][p] = kForbiddenCost;
    for (int i = 0; i + 1 < n; ++i) forward[i][n - 1] = kForbiddenCost;
  }
  const HungarianResult fwd = hungarian(forward);

  std::vector<std::vector<double>> backward(n, std::vector<double>(n));
  for (int p = 0; p < n; ++p) {
    for (int i = 0; i < n; ++i) {
      backward[p][i] = inst.cost(i + 1, n + p + 1);
    }
  }
  for (int i = 0; i < n; ++i) {
    backward[fwd.assignment[i]][i] = kForbiddenCost;
  }
  const HungarianResult bwd = hungarian(backward);

  EdgeSet edges;
  for (int i = 0; i < n; ++i) {
    edges.insert(i + 1, n + fwd.assignment[i] + 1);
  }
  for (int p = 0; p < n; ++p) {
    edges.insert(bwd.assignment[p] + 1, n + p + 1);
  }
  return detect_cycles(edges, n);
}

CycleSet detect_cycles(const EdgeSet& edges, int n) {
  std::vector<std::vector<NodeId>> adj(2 * n + 1);
  for (const Edge& e : edges) {
    if (e.item < 1 || e.item > n || e.placeholder <= n || e.placeholder > 2 * n) {
      throw ValidationError("edge (" + std::to_string(e.item) + ", " +
                            std::to_string(e.placeholder) + ") is not item-placeholder for n = " +
                            std::to_string(n));
    }
    adj[e.item].push_back(e.placeholder);
    adj[e.placeholder].push_back(e.item);
  }
  for (NodeId v = 1; v <= 2 * n; ++v) {
    if (adj[v].size() != 2) {
      throw DegreeError("node " + std::to_string(v) + " has degree " +
                        std::to_string(adj[v].size()) + ", expected 2", v);
    }
    std::sort(adj[v].begin(), adj[v].end());
  }

  CycleSet cs;
  std::vector<bool> visited(2 * n + 1, false);
  for (NodeId start = 1; start <= n; ++start) {
    if (visited[start]) continue;
    Cycle cycle;
    cycle.items.push_back(start);
    visited[start] = true;
    NodeId current = start;
    NodeId next = adj[start][0];  // smaller placeholder first: canonical orientation
    while (next != start) {
      visited[next] = true;
      if (next > n) {
        cycle.placeholders.push_back(next);
      } else {
        cycle.items.push_back(next);
      }
      const NodeId chosen = (adj[next][0] == current) ? adj[next][1] : adj[next][0];
      current = next;
      next = chosen;
    }
    cs.cycles.push_back(std::move(cycle));
  }
  // Scanning items in increasing id already yields cycles sorted by
  // smallest contained item id.
  return cs;
}

}  // namespace jra
