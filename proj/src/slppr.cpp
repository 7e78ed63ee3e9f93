#include "jra/slppr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "json.hpp"

namespace jra {

std::set<NodeId> select_in_circle(const Instance& inst, const Point& center, double r_r) {
  if (!(r_r > 0.0)) {
    throw DomainError("selection radius must be positive");
  }
  std::set<NodeId> selected;
  for (NodeId v = 1; v <= 2 * inst.n(); ++v) {
    if (distance(inst.coord(v), center) <= r_r) {
      selected.insert(v);
    }
  }
  return selected;
}

double adaptive_radius(int n, double area, int n_in) {
  if (n <= 0 || !(area > 0.0) || n_in <= 0) {
    throw DomainError("adaptive_radius requires positive n, area, and target count");
  }
  return std::sqrt(n_in * area / (M_PI * n));
}

int step_length(double r_r, int n, double area, double kappa) {
  if (!(r_r > 0.0) || n <= 0 || !(area > 0.0) || !(kappa > 0.0)) {
    throw DomainError("step_length requires positive arguments");
  }
  const double spacing = std::sqrt(area / n);
  const long steps = std::lround(2.0 * kappa * r_r / spacing);
  return static_cast<int>(std::max(1L, steps));
}

double effective_radius(const PolishConfig& cfg, const Instance& inst) {
  if (cfg.target_nodes) {
    return adaptive_radius(inst.n(), inst.area(), *cfg.target_nodes);
  }
  if (cfg.sigma) {
    if (!(*cfg.sigma > 0.0)) throw DomainError("sigma must be positive");
    return *cfg.sigma * std::sqrt(inst.area() / inst.n());
  }
  if (!(cfg.radius > 0.0)) throw DomainError("polish radius must be positive");
  return cfg.radius;
}

int effective_step(const PolishConfig& cfg, const Instance& inst) {
  if (cfg.kappa) {
    return step_length(effective_radius(cfg, inst), inst.n(), inst.area(), *cfg.kappa);
  }
  const int steps = cfg.n_stp.value_or(cfg.eta);
  if (steps < 1) throw DomainError("polish step must be >= 1");
  return steps;
}

PolishResult polish(const Instance& inst, const Tour& t, const PolishConfig& cfg,
                    const SolveOptions& opts) {
  validate_tour(inst, t);
  if (cfg.passes < 1) {
    throw DomainError("polish requires passes >= 1");
  }
  const double r_r = effective_radius(cfg, inst);
  const int n_stp = effective_step(cfg, inst);
  const int n = inst.n();
  const NodeId anchor = inst.fixed_pair_enabled() ? inst.goal_item() : NodeId{1};

  PolishResult result;
  result.tour = t;
  double current_cost = tour_cost(inst, t);
  result.stats.initial_cost = current_cost;

  auto run_circle = [&](const Point& center, PassStat& pass) {
    CircleStat stat;
    stat.center = center;
    const auto begin = std::chrono::steady_clock::now();
    const std::set<NodeId> selected = select_in_circle(inst, center, r_r);
    stat.selected = static_cast<int>(selected.size());
    if (selected.size() < 2) {
      stat.skipped = true;
      pass.circles.push_back(stat);
      return;
    }
    ReducedSolveResult reduced;
    Tour candidate;
    try {
      const ReducedProblem rp = break_tour(inst, result.tour, selected);
      reduced = solve_reduced(inst, rp, opts);
      if (reduced.status == SolveStatus::infeasible) {
        throw InternalConsistencyError("reduced solve reported infeasible despite a warm start");
      }
      candidate = recover(rp, reduced.edges, n);
    } catch (const DegenerateError&) {
      stat.skipped = true;
      pass.circles.push_back(stat);
      return;
    }
    stat.time_limited = reduced.status == SolveStatus::feasible_time_limit;
    result.stats.any_time_limited |= stat.time_limited;
    const double candidate_cost = tour_cost(inst, candidate);
    if (candidate_cost < current_cost - 1e-12) {
      stat.delta = candidate_cost - current_cost;
      result.tour = std::move(candidate);
      current_cost = candidate_cost;
    }
    stat.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    pass.circles.push_back(stat);
  };

  for (int pass_no = 0; pass_no < cfg.passes; ++pass_no) {
    PassStat pass;
    if (cfg.centers) {
      for (const Point& center : *cfg.centers) {
        run_circle(center, pass);
      }
    } else {
      for (int k = 0; k < n; k += n_stp) {
        // Way-point: k-th item along the current tour, anchored.
        const auto& items = result.tour.q_I;
        const auto at = std::find(items.begin(), items.end(), anchor);
        const int offset = static_cast<int>(at - items.begin());
        const NodeId waypoint = items[(offset + k) % n];
        run_circle(inst.coord(waypoint), pass);
      }
    }
    pass.cost_after = current_cost;
    result.stats.passes.push_back(std::move(pass));
  }
  result.stats.final_cost = current_cost;
  return result;
}

std::string PolishStats::to_json() const {
  nlohmann::json j;
  j["initial_cost"] = initial_cost;
  j["final_cost"] = final_cost;
  j["any_time_limited"] = any_time_limited;
  j["passes"] = nlohmann::json::array();
  for (const PassStat& pass : passes) {
    nlohmann::json jp;
    jp["cost_after"] = pass.cost_after;
    jp["circles"] = nlohmann::json::array();
    for (const CircleStat& c : pass.circles) {
      jp["circles"].push_back({{"center", {c.center.x, c.center.y}},
                               {"selected", c.selected},
                               {"delta", c.delta},
                               {"time", c.seconds},
                               {"skipped", c.skipped},
                               {"time_limited", c.time_limited}});
    }
    j["passes"].push_back(std::move(jp));
  }
  return j.dump(2) + "\n";
}

}  // namespace jra
