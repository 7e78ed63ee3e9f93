#include "jra/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <queue>
#include <unordered_map>

namespace jra {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::feasible_time_limit: return "feasible-time-limit";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "?";
}

DenseProblem DenseProblem::full(const Instance& inst) {
  const int n = inst.n();
  DenseProblem p;
  p.item_ids.resize(n);
  p.placeholder_ids.resize(n);
  for (int i = 0; i < n; ++i) {
    p.item_ids[i] = i + 1;
    p.placeholder_ids[i] = n + i + 1;
  }
  p.cost.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      p.cost[static_cast<std::size_t>(i) * n + j] = inst.cost(i + 1, n + j + 1);
    }
  }
  return p;
}

int retain_bound(int n, double alpha) {
  return static_cast<int>(std::ceil(2.0 * n * (1.0 - alpha) - 1e-9));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

enum EdgeState : std::int8_t { kFree = 0, kForced = 1, kForbidden = 2 };

struct Relaxation {
  bool feasible = false;
  double cost = 0.0;
  std::vector<int> selected;  // edge indices i * m + p, forced included
};

class BranchAndCut {
public:
  BranchAndCut(const DenseProblem& prob, const DenseSolveOptions& opts)
      : prob_(prob), opts_(opts), m_(prob.m()) {}

  SolveResult run();

private:
  int idx(int i, int p) const { return i * m_ + p; }

  bool map_edge(const Edge& e, int* out) const;
  bool setup();            // returns false when constraints are inconsistent
  void install_warm_start();
  Relaxation relax();
  bool dfs();              // returns false when aborted by the time limit
  bool expired() const;
  double elapsed() const;
  void patch_incumbent(const Relaxation& rel, const std::vector<std::vector<int>>& components);
  std::vector<int> two_opt_descent(const std::vector<int>& cycle_edges) const;
  bool root_retain_ok(const std::vector<int>& edges) const;
  void offer_incumbent(const std::vector<int>& cycle_edges);

  struct Trail {
    std::vector<std::pair<int, std::int8_t>> changes;
  };
  bool apply(int edge, EdgeState next, Trail& trail);  // false if force overflows a degree
  void undo(const Trail& trail);

  void accept_incumbent(double cost, const std::vector<int>& selected);

  const DenseProblem& prob_;
  const DenseSolveOptions& opts_;
  int m_;

  std::vector<std::int8_t> state_;
  std::vector<std::int8_t> root_state_;  // state before any branching
  std::vector<int> forced_deg_item_, forced_deg_ph_;
  std::vector<char> in_retain_;
  bool has_retain_ = false;
  int retain_target_ = 0;
  int forced_retain_ = 0;
  int open_retain_ = 0;  // retain edges still free

  bool have_incumbent_ = false;
  double best_cost_ = kInf;
  std::vector<int> best_edges_;

  std::chrono::steady_clock::time_point start_;
  double limit_ = 0.0;

  SolveStats stats_;

  std::unordered_map<NodeId, int> item_index_, ph_index_;

  // flow scratch
  std::vector<std::int8_t> flow_;
  std::vector<double> phi_, dist_;
  std::vector<int> parent_, rem_item_, rem_ph_;
};

bool BranchAndCut::map_edge(const Edge& e, int* out) const {
  auto it = item_index_.find(e.item);
  auto jt = ph_index_.find(e.placeholder);
  if (it == item_index_.end() || jt == ph_index_.end()) return false;
  *out = idx(it->second, jt->second);
  return true;
}

bool BranchAndCut::setup() {
  state_.assign(static_cast<std::size_t>(m_) * m_, kFree);
  forced_deg_item_.assign(m_, 0);
  forced_deg_ph_.assign(m_, 0);
  in_retain_.assign(static_cast<std::size_t>(m_) * m_, 0);

  for (int i = 0; i < m_; ++i) item_index_[prob_.item_ids[i]] = i;
  for (int p = 0; p < m_; ++p) ph_index_[prob_.placeholder_ids[p]] = p;

  for (const Edge& e : opts_.forbidden_edges) {
    int k;
    if (map_edge(e, &k)) state_[k] = kForbidden;
  }
  for (const Edge& e : opts_.forced_edges) {
    int k;
    if (!map_edge(e, &k)) return false;  // forcing an edge outside the problem
    if (state_[k] == kForbidden) return false;
    if (state_[k] == kForced) continue;
    state_[k] = kForced;
    if (++forced_deg_item_[k / m_] > 2 || ++forced_deg_ph_[k % m_] > 2) return false;
  }

  if (opts_.retain_set && (opts_.retain_min > 0 || opts_.retain_equality)) {
    if (opts_.retain_min > static_cast<int>(opts_.retain_set->size())) return false;
    has_retain_ = true;
    retain_target_ = opts_.retain_min;
    for (const Edge& e : *opts_.retain_set) {
      int k;
      if (!map_edge(e, &k)) continue;  // unretainable edge: never countable
      if (in_retain_[k]) continue;
      in_retain_[k] = 1;
      if (state_[k] == kForced) ++forced_retain_;
      if (state_[k] == kFree) ++open_retain_;
    }
  }
  return true;
}

void BranchAndCut::install_warm_start() {
  if (!opts_.warm_edges) return;
  std::vector<int> selected;
  selected.reserve(opts_.warm_edges->size());
  std::vector<int> deg_i(m_, 0), deg_p(m_, 0);
  int retained = 0;
  for (const Edge& e : *opts_.warm_edges) {
    int k;
    if (!map_edge(e, &k)) return;
    if (state_[k] == kForbidden) return;
    selected.push_back(k);
    ++deg_i[k / m_];
    ++deg_p[k % m_];
    if (has_retain_ && in_retain_[k]) ++retained;
  }
  if (static_cast<int>(selected.size()) != 2 * m_) return;
  for (int i = 0; i < m_; ++i) {
    if (deg_i[i] != 2 || deg_p[i] != 2) return;
  }
  for (std::size_t k = 0; k < state_.size(); ++k) {
    if (state_[k] == kForced &&
        std::find(selected.begin(), selected.end(), static_cast<int>(k)) == selected.end()) {
      return;
    }
  }
  if (has_retain_) {
    if (opts_.retain_equality ? retained != retain_target_ : retained < retain_target_) return;
  }
  // Connectivity is guaranteed for warm starts coming from valid tours;
  // verify anyway so a bad caller cannot poison the incumbent.
  std::vector<std::vector<int>> adj(2 * m_);
  for (int k : selected) {
    adj[k / m_].push_back(m_ + k % m_);
    adj[m_ + k % m_].push_back(k / m_);
  }
  std::vector<char> seen(2 * m_, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++count;
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  if (count != 2 * m_) return;

  offer_incumbent(selected);
}

void BranchAndCut::accept_incumbent(double cost_hint, const std::vector<int>& selected) {
  if (have_incumbent_ && cost_hint >= best_cost_ + 1e-7) return;
  // Canonical cost: sum in edge-index order, so the same edge set always
  // produces the same double no matter which search path found it.
  std::vector<int> edges = selected;
  std::sort(edges.begin(), edges.end());
  double cost = 0.0;
  for (const int k : edges) cost += prob_.cost[k];
  if (have_incumbent_ && cost >= best_cost_) return;
  best_cost_ = cost;
  best_edges_ = std::move(edges);
  have_incumbent_ = true;
  if (opts_.log) {
    (*opts_.log) << "incumbent " << cost << " @ " << elapsed() << "\n";
  }
}

double BranchAndCut::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

bool BranchAndCut::expired() const { return limit_ > 0.0 && elapsed() >= limit_; }

bool BranchAndCut::apply(int edge, EdgeState next, Trail& trail) {
  const std::int8_t prev = state_[edge];
  if (prev == next) return true;
  trail.changes.push_back({edge, prev});
  state_[edge] = next;
  const int i = edge / m_, p = edge % m_;
  if (prev == kForced) {
    --forced_deg_item_[i];
    --forced_deg_ph_[p];
    if (in_retain_[edge]) --forced_retain_;
  }
  if (prev == kFree && in_retain_[edge]) --open_retain_;
  if (next == kForced) {
    ++forced_deg_item_[i];
    ++forced_deg_ph_[p];
    if (in_retain_[edge]) ++forced_retain_;
    if (forced_deg_item_[i] > 2 || forced_deg_ph_[p] > 2) return false;
  }
  if (next == kFree && in_retain_[edge]) ++open_retain_;
  return true;
}

void BranchAndCut::undo(const Trail& trail) {
  for (auto it = trail.changes.rbegin(); it != trail.changes.rend(); ++it) {
    const auto [edge, prev] = *it;
    const std::int8_t cur = state_[edge];
    state_[edge] = prev;
    const int i = edge / m_, p = edge % m_;
    if (cur == kForced) {
      --forced_deg_item_[i];
      --forced_deg_ph_[p];
      if (in_retain_[edge]) --forced_retain_;
    }
    if (cur == kFree && in_retain_[edge]) --open_retain_;
    if (prev == kForced) {
      ++forced_deg_item_[i];
      ++forced_deg_ph_[p];
      if (in_retain_[edge]) ++forced_retain_;
    }
    if (prev == kFree && in_retain_[edge]) ++open_retain_;
  }
}

bool BranchAndCut::root_retain_ok(const std::vector<int>& edges) const {
  if (!has_retain_) return true;
  int retained = 0;
  for (const int k : edges) retained += in_retain_[k];
  return opts_.retain_equality ? retained == retain_target_ : retained >= retain_target_;
}

// 2-opt descent on a single alternating cycle, restricted to exchanges
// valid under root constraints. Keeps the cycle connected by reversing
// the segment between the two cut points.
std::vector<int> BranchAndCut::two_opt_descent(const std::vector<int>& cycle_edges) const {
  const int m = static_cast<int>(cycle_edges.size()) / 2;
  if (m < 3) return cycle_edges;

  // Sequence form: item[t] connects to ph[t] and ph[t-1] (cyclic).
  std::vector<std::array<int, 2>> item_nbr(m_, {-1, -1}), ph_nbr(m_, {-1, -1});
  for (const int k : cycle_edges) {
    const int i = k / m_, p = k % m_;
    (item_nbr[i][0] < 0 ? item_nbr[i][0] : item_nbr[i][1]) = p;
    (ph_nbr[p][0] < 0 ? ph_nbr[p][0] : ph_nbr[p][1]) = i;
  }
  std::vector<int> items(m), phs(m);
  items[0] = cycle_edges.front() / m_;
  phs[0] = cycle_edges.front() % m_;
  for (int t = 1; t < m; ++t) {
    const auto& in = ph_nbr[phs[t - 1]];
    items[t] = (in[0] == items[t - 1]) ? in[1] : in[0];
    const auto& pn = item_nbr[items[t]];
    phs[t] = (pn[0] == phs[t - 1]) ? pn[1] : pn[0];
  }

  for (int round = 0; round < 8 * m; ++round) {
    double best_delta = -1e-12;
    int best_j = -1, best_k = -1;
    for (int j = 0; j < m; ++j) {
      const int rm1 = idx(items[j], phs[j]);
      if (root_state_[rm1] == kForced) continue;
      for (int k = 0; k < m; ++k) {
        if (k == j) continue;
        const int succ = items[(k + 1) % m];
        const int rm2 = idx(succ, phs[k]);
        if (root_state_[rm2] == kForced) continue;
        const int ad1 = idx(items[j], phs[k]);
        const int ad2 = idx(succ, phs[j]);
        if (root_state_[ad1] == kForbidden || root_state_[ad2] == kForbidden) continue;
        const double delta =
            prob_.cost[ad1] + prob_.cost[ad2] - prob_.cost[rm1] - prob_.cost[rm2];
        if (delta < best_delta) {
          best_delta = delta;
          best_j = j;
          best_k = k;
        }
      }
    }
    if (best_j < 0) break;
    // Rotate so the move starts at position 0, then reverse the segment.
    std::rotate(items.begin(), items.begin() + best_j, items.end());
    std::rotate(phs.begin(), phs.begin() + best_j, phs.end());
    const int k = (best_k - best_j + m) % m;
    std::reverse(phs.begin(), phs.begin() + k + 1);
    std::reverse(items.begin() + 1, items.begin() + k + 1);
  }

  std::vector<int> out;
  out.reserve(2 * m);
  for (int t = 0; t < m; ++t) {
    out.push_back(idx(items[t], phs[t]));
    out.push_back(idx(items[(t + 1) % m], phs[t]));
  }
  return out;
}

void BranchAndCut::offer_incumbent(const std::vector<int>& cycle_edges) {
  const std::vector<int> improved = two_opt_descent(cycle_edges);
  if (root_retain_ok(improved)) {
    double cost = 0.0;
    for (const int k : improved) cost += prob_.cost[k];
    accept_incumbent(cost, improved);
  } else if (root_retain_ok(cycle_edges)) {
    double cost = 0.0;
    for (const int k : cycle_edges) cost += prob_.cost[k];
    accept_incumbent(cost, cycle_edges);
  }
}

// Greedy patching of a disconnected relaxation into a feasible tour,
// restricted to root-level constraints: a strong global incumbent that
// sharpens pruning everywhere in the tree.
void BranchAndCut::patch_incumbent(const Relaxation& rel,
                                   const std::vector<std::vector<int>>& components) {
  (void)rel;
  std::vector<std::vector<int>> groups = components;
  while (groups.size() > 1) {
    double best_delta = kInf;
    int best_a = -1, best_b = -1, best_ga = -1, best_gb = -1;
    for (std::size_t ga = 0; ga < groups.size(); ++ga) {
      for (std::size_t gb = ga + 1; gb < groups.size(); ++gb) {
        for (const int ea : groups[ga]) {
          if (root_state_[ea] == kForced) continue;
          for (const int eb : groups[gb]) {
            if (root_state_[eb] == kForced) continue;
            const int cross1 = idx(ea / m_, eb % m_);
            const int cross2 = idx(eb / m_, ea % m_);
            if (root_state_[cross1] == kForbidden || root_state_[cross2] == kForbidden) continue;
            const double delta =
                prob_.cost[cross1] + prob_.cost[cross2] - prob_.cost[ea] - prob_.cost[eb];
            if (delta < best_delta) {
              best_delta = delta;
              best_a = ea;
              best_b = eb;
              best_ga = static_cast<int>(ga);
              best_gb = static_cast<int>(gb);
            }
          }
        }
      }
    }
    if (best_a < 0) return;  // no admissible reconnection
    auto& ga = groups[best_ga];
    auto& gb = groups[best_gb];
    ga.erase(std::find(ga.begin(), ga.end(), best_a));
    gb.erase(std::find(gb.begin(), gb.end(), best_b));
    ga.push_back(idx(best_a / m_, best_b % m_));
    ga.push_back(idx(best_b / m_, best_a % m_));
    ga.insert(ga.end(), gb.begin(), gb.end());
    groups.erase(groups.begin() + best_gb);
  }
  offer_incumbent(groups.front());
}

Relaxation BranchAndCut::relax() {
  Relaxation out;
  rem_item_.assign(m_, 2);
  rem_ph_.assign(m_, 2);
  double forced_cost = 0.0;
  for (int k = 0; k < m_ * m_; ++k) {
    if (state_[k] == kForced) {
      --rem_item_[k / m_];
      --rem_ph_[k % m_];
      forced_cost += prob_.cost[k];
    }
  }
  flow_.assign(static_cast<std::size_t>(m_) * m_, 0);
  phi_.assign(2 * m_, 0.0);

  int units = 0;
  for (int i = 0; i < m_; ++i) units += rem_item_[i];

  using QE = std::pair<double, int>;  // nodes: items 0..m-1, placeholders m..2m-1
  for (int unit = 0; unit < units; ++unit) {
    dist_.assign(2 * m_, kInf);
    parent_.assign(2 * m_, -1);
    std::priority_queue<QE, std::vector<QE>, std::greater<QE>> pq;
    for (int i = 0; i < m_; ++i) {
      if (rem_item_[i] > 0) {
        dist_[i] = -phi_[i];
        pq.push({dist_[i], i});
      }
    }
    int sink = -1;
    std::vector<char> settled(2 * m_, 0);
    while (!pq.empty()) {
      const auto [d, v] = pq.top();
      pq.pop();
      if (settled[v] || d > dist_[v]) continue;
      settled[v] = 1;
      if (v >= m_ && rem_ph_[v - m_] > 0) {
        sink = v;
        break;
      }
      if (v < m_) {
        const int i = v;
        for (int p = 0; p < m_; ++p) {
          const int k = idx(i, p);
          if (state_[k] != kFree || flow_[k] || settled[m_ + p]) continue;
          const double nd = d + prob_.cost[k] + phi_[i] - phi_[m_ + p];
          if (nd < dist_[m_ + p] - 1e-15) {
            dist_[m_ + p] = nd;
            parent_[m_ + p] = i;
            pq.push({nd, m_ + p});
          }
        }
      } else {
        const int p = v - m_;
        for (int i = 0; i < m_; ++i) {
          const int k = idx(i, p);
          if (!flow_[k] || settled[i]) continue;
          const double nd = d - prob_.cost[k] + phi_[m_ + p] - phi_[i];
          if (nd < dist_[i] - 1e-15) {
            dist_[i] = nd;
            parent_[i] = m_ + p;
            pq.push({nd, i});
          }
        }
      }
    }
    if (sink < 0) {
      return out;  // no augmenting path: no 2-factor under current state
    }
    // Unreached nodes take the full cap so every residual reduced cost
    // stays nonnegative.
    const double reach = dist_[sink];
    for (int v = 0; v < 2 * m_; ++v) {
      phi_[v] += std::min(dist_[v], reach);
    }
    // Augment one unit along the parent chain.
    int v = sink;
    while (parent_[v] >= 0) {
      const int u = parent_[v];
      if (v >= m_) {
        flow_[idx(u, v - m_)] = 1;  // item u -> placeholder v
      } else {
        flow_[idx(v, u - m_)] = 0;  // placeholder u -> item v (cancel)
      }
      v = u;
    }
    --rem_item_[v];
    --rem_ph_[sink - m_];
  }

  out.feasible = true;
  out.cost = forced_cost;
  out.selected.reserve(2 * m_);
  for (int k = 0; k < m_ * m_; ++k) {
    if (state_[k] == kForced) {
      out.selected.push_back(k);
    } else if (flow_[k]) {
      out.selected.push_back(k);
      out.cost += prob_.cost[k];
    }
  }
  return out;
}

bool BranchAndCut::dfs() {
  ++stats_.branch_nodes;
  if (expired()) {
    return false;
  }

  if (has_retain_) {
    if (forced_retain_ + open_retain_ < retain_target_) return true;  // cannot reach the bound
    if (opts_.retain_equality && forced_retain_ > retain_target_) return true;
  }

  const Relaxation rel = relax();
  if (!rel.feasible) return true;

  const double prune_at =
      have_incumbent_
          ? best_cost_ - std::max(kEps, opts_.gap_tolerance * std::abs(best_cost_))
          : kInf;
  if (rel.cost >= prune_at) return true;

  // Decompose the 2-regular selection into components.
  std::vector<std::vector<int>> adj(2 * m_);
  for (int k : rel.selected) {
    adj[k / m_].push_back(m_ + k % m_);
    adj[m_ + k % m_].push_back(k / m_);
  }
  std::vector<int> comp(2 * m_, -1);
  std::vector<std::vector<int>> comp_edges;  // per component, selected edge indices
  for (int startv = 0; startv < m_; ++startv) {
    if (comp[startv] >= 0) continue;
    const int c = static_cast<int>(comp_edges.size());
    comp_edges.emplace_back();
    int prev = -1, at = startv;
    do {
      comp[at] = c;
      const int to = (adj[at][0] == prev) ? adj[at][1] : adj[at][0];
      const int i = (at < m_) ? at : to;
      const int p = (at < m_) ? to : at;
      comp_edges[c].push_back(idx(i, p - m_));
      prev = at;
      at = to;
    } while (at != startv);
  }

  if (comp_edges.size() > 1) {
    // Additive connectivity bound: a tour leaves every component through
    // at least two crossing edges, each costing its (nonnegative)
    // reduced cost on top of the flow bound. Each crossing edge serves
    // the components at both ends, hence the half.
    const std::size_t comps = comp_edges.size();
    std::vector<double> min1(comps, kInf), min2(comps, kInf);
    for (int k = 0; k < m_ * m_; ++k) {
      if (state_[k] != kFree || flow_[k]) continue;
      const int ci = comp[k / m_];
      const int cp = comp[m_ + k % m_];
      if (ci == cp) continue;
      const double reduced = std::max(0.0, prob_.cost[k] + phi_[k / m_] - phi_[m_ + k % m_]);
      for (const int c : {ci, cp}) {
        if (reduced < min1[c]) {
          min2[c] = min1[c];
          min1[c] = reduced;
        } else if (reduced < min2[c]) {
          min2[c] = reduced;
        }
      }
    }
    double extra = 0.0;
    for (std::size_t c = 0; c < comps; ++c) {
      if (min2[c] >= kInf) return true;  // component cannot be reconnected at all
      extra += min1[c] + min2[c];
    }
    if (rel.cost + 0.5 * extra >= prune_at) {
      patch_incumbent(rel, comp_edges);
      return true;
    }
  }

  int retained = 0;
  if (has_retain_) {
    for (int k : rel.selected) {
      if (in_retain_[k]) ++retained;
    }
  }

  if (comp_edges.size() == 1) {
    const bool retain_ok =
        !has_retain_ ||
        (opts_.retain_equality ? retained == retain_target_ : retained >= retain_target_);
    if (retain_ok) {
      accept_incumbent(rel.cost, rel.selected);
      return true;  // relaxation optimum is feasible: node solved exactly
    }
  } else {
    patch_incumbent(rel, comp_edges);
    if (rel.cost >= best_cost_ - std::max(kEps, opts_.gap_tolerance * std::abs(best_cost_))) {
      return true;  // the patched incumbent already closed this node
    }
  }

  // Reduced-cost fixing: by transportation duality, any 2-factor that
  // includes unselected e costs >= bound + reduced(e), and one that
  // omits selected e costs >= bound - reduced(e). Edges whose bound
  // meets the incumbent are decided for the whole subtree.
  const double fix_at =
      have_incumbent_
          ? best_cost_ - std::max(kEps, opts_.gap_tolerance * std::abs(best_cost_))
          : kInf;
  Trail fixes;
  bool subtree_feasible = true;
  for (int k = 0; k < m_ * m_ && subtree_feasible; ++k) {
    if (state_[k] != kFree) continue;
    const double reduced = prob_.cost[k] + phi_[k / m_] - phi_[m_ + k % m_];
    if (flow_[k]) {
      if (rel.cost - reduced >= fix_at) subtree_feasible = apply(k, kForced, fixes);
    } else {
      if (rel.cost + reduced >= fix_at) subtree_feasible = apply(k, kForbidden, fixes);
    }
  }
  if (has_retain_ && subtree_feasible) {
    subtree_feasible = forced_retain_ + open_retain_ >= retain_target_ &&
                       !(opts_.retain_equality && forced_retain_ > retain_target_);
  }

  bool completed = true;
  if (!subtree_feasible) {
    // fixing proved no improving solution remains here
  } else if (comp_edges.size() == 1) {
    // Connected but the retain cardinality is off: branch on a retain edge.
    int branch_edge = -1;
    double branch_cost = -1.0;
    const bool need_more = retained < retain_target_;
    for (int k = 0; k < m_ * m_; ++k) {
      if (!in_retain_[k] || state_[k] != kFree) continue;
      const bool selected = flow_[k] != 0;
      if (need_more == selected) continue;  // need unselected when short, selected when over
      if (prob_.cost[k] > branch_cost) {
        branch_cost = prob_.cost[k];
        branch_edge = k;
      }
    }
    if (branch_edge >= 0) {
      for (const EdgeState decision :
           need_more ? std::array<EdgeState, 2>{kForced, kForbidden}
                     : std::array<EdgeState, 2>{kForbidden, kForced}) {
        Trail trail;
        const bool ok = apply(branch_edge, decision, trail);
        const bool keep_going = !ok || dfs();
        undo(trail);
        if (!keep_going) {
          completed = false;
          break;
        }
      }
    }
  } else {
    // Disconnected: lazy subtour elimination on the smallest component.
    ++stats_.subtour_cuts_added;
    int smallest = 0;
    for (std::size_t c = 1; c < comp_edges.size(); ++c) {
      if (comp_edges[c].size() < comp_edges[smallest].size()) smallest = static_cast<int>(c);
    }
    if (opts_.log) {
      (*opts_.log) << "cut added |S|=" << comp_edges[smallest].size() << "\n";
    }

    std::vector<int> cut = comp_edges[smallest];
    std::sort(cut.begin(), cut.end(), [this](int a, int b) {
      if (prob_.cost[a] != prob_.cost[b]) return prob_.cost[a] > prob_.cost[b];
      return a < b;
    });
    cut.erase(std::remove_if(cut.begin(), cut.end(),
                             [this](int k) { return state_[k] != kFree; }),
              cut.end());
    // An empty list means the subtour is fully decided: nothing improving here.

    // Child t keeps edges cut[0..t-1] and drops cut[t]; together the
    // children cover every solution that omits at least one cycle edge,
    // which is exactly what the subtour constraint demands.
    Trail trail;
    for (std::size_t t = 0; t < cut.size(); ++t) {
      Trail child;
      const bool ok = apply(cut[t], kForbidden, child);
      if (ok && !dfs()) completed = false;
      undo(child);
      if (!completed) break;
      if (!apply(cut[t], kForced, trail)) break;  // later children infeasible
    }
    undo(trail);
  }
  undo(fixes);
  return completed;
}

SolveResult BranchAndCut::run() {
  start_ = std::chrono::steady_clock::now();
  limit_ = opts_.time_limit;

  SolveResult result;
  if (!setup()) {
    result.status = SolveStatus::infeasible;
    result.stats.wall_time = elapsed();
    return result;
  }
  root_state_ = state_;
  install_warm_start();
  const bool completed = dfs();

  result.stats = stats_;
  result.stats.wall_time = elapsed();
  if (!have_incumbent_) {
    result.status = SolveStatus::infeasible;
    return result;
  }
  result.status = completed ? SolveStatus::optimal : SolveStatus::feasible_time_limit;
  result.cost = best_cost_;
  for (int k : best_edges_) {
    result.edges.insert(prob_.item_ids[k / m_], prob_.placeholder_ids[k % m_]);
  }
  return result;
}

}  // namespace

SolveResult solve_dense(const DenseProblem& prob, const DenseSolveOptions& opts) {
  for (const Edge& e : opts.forced_edges) {
    if (opts.forbidden_edges.contains(e)) {
      SolveResult r;
      r.status = SolveStatus::infeasible;
      return r;
    }
  }
  BranchAndCut bc(prob, opts);
  return bc.run();
}

SolveResult solve(const Instance& inst, const SolveOptions& opts) {
  DenseSolveOptions dense;
  dense.time_limit = opts.time_limit;
  dense.forced_edges = opts.forced_edges;
  dense.forbidden_edges = opts.forbidden_edges;
  dense.retain_set = opts.retain_set;
  dense.retain_min = opts.retain_min;
  dense.retain_equality = opts.retain_equality;
  dense.gap_tolerance = opts.gap_tolerance;
  dense.log = opts.log;
  if (inst.fixed_pair_enabled()) {
    dense.forced_edges.insert(inst.goal_item(), inst.start_placeholder());
  }
  if (opts.warm_start) {
    validate_tour(inst, *opts.warm_start);
    dense.warm_edges = edges_of(*opts.warm_start);
  }
  if (dense.retain_set && dense.retain_min <= 0 && !dense.retain_equality) {
    dense.retain_set.reset();  // vacuous constraint
  }
  return solve_dense(DenseProblem::full(inst), dense);
}

SolveResult solve_large_alpha(const Instance& inst, const Tour& incumbent, double alpha,
                              SolveOptions opts) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  validate_tour(inst, incumbent);
  opts.retain_set = edges_of(incumbent);
  opts.retain_min = retain_bound(inst.n(), alpha);
  opts.warm_start = incumbent;
  return solve(inst, opts);
}

void export_lp(const Instance& inst, const SolveOptions& opts, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error("cannot write LP file: " + file.string());
  }
  const int n = inst.n();
  out.precision(17);

  EdgeSet forced = opts.forced_edges;
  if (inst.fixed_pair_enabled()) {
    forced.insert(inst.goal_item(), inst.start_placeholder());
  }
  auto var = [](NodeId i, NodeId p) {
    return "x_" + std::to_string(i) + "_" + std::to_string(p);
  };

  out << "\\ alternating-cycle assignment-routing model\n";
  out << "\\ subtour elimination constraints omitted: enforced lazily at solve time\n";
  out << "Minimize\n obj:";
  for (NodeId i = 1; i <= n; ++i) {
    for (NodeId p = n + 1; p <= 2 * n; ++p) {
      out << (i == 1 && p == n + 1 ? " " : " + ") << inst.cost(i, p) << " " << var(i, p);
    }
    out << "\n     ";
  }
  out << "\nSubject To\n";
  for (NodeId i = 1; i <= n; ++i) {
    out << " deg_i_" << i << ":";
    for (NodeId p = n + 1; p <= 2 * n; ++p) {
      out << (p == n + 1 ? " " : " + ") << var(i, p);
    }
    out << " = 2\n";
  }
  for (NodeId p = n + 1; p <= 2 * n; ++p) {
    out << " deg_p_" << p << ":";
    for (NodeId i = 1; i <= n; ++i) {
      out << (i == 1 ? " " : " + ") << var(i, p);
    }
    out << " = 2\n";
  }
  if (opts.retain_set && (opts.retain_min > 0 || opts.retain_equality)) {
    out << " retain:";
    bool first = true;
    for (const Edge& e : *opts.retain_set) {
      out << (first ? " " : " + ") << var(e.item, e.placeholder);
      first = false;
    }
    out << (opts.retain_equality ? " = " : " >= ") << opts.retain_min << "\n";
  }
  out << "Bounds\n";
  for (const Edge& e : forced) {
    out << " " << var(e.item, e.placeholder) << " = 1\n";
  }
  for (const Edge& e : opts.forbidden_edges) {
    if (!forced.contains(e)) {
      out << " " << var(e.item, e.placeholder) << " = 0\n";
    }
  }
  out << "Binaries\n";
  for (NodeId i = 1; i <= n; ++i) {
    out << " ";
    for (NodeId p = n + 1; p <= 2 * n; ++p) {
      out << var(i, p) << (p == 2 * n ? "" : " ");
    }
    out << "\n";
  }
  out << "End\n";
}

}  // namespace jra
