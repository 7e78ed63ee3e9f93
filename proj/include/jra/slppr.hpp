#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "jra/exact_solver.hpp"
#include "jra/instance.hpp"
#include "jra/ppr.hpp"
#include "jra/tour.hpp"

namespace jra {

/// Configuration for spatially localized polishing. The effective radius
/// resolves as: target_nodes (adaptive) > sigma (sigma * sqrt(S/n)) >
/// radius. The effective step resolves as: kappa (step_length) > n_stp >
/// eta. Explicit centers switch to manual multi-circle mode.
struct PolishConfig {
  double radius = 0.2;
  std::optional<int> n_stp;
  int passes = 2;
  std::optional<int> target_nodes;  // expected item count inside a circle
  std::optional<double> sigma;
  std::optional<double> kappa;
  int eta = 3;
  std::optional<std::vector<Point>> centers;
};

/// All nodes within Euclidean distance r_r of the center, boundary
/// included.
std::set<NodeId> select_in_circle(const Instance& inst, const Point& center, double r_r);

/// r_r = sqrt(n_in * S / (pi * n)).
double adaptive_radius(int n, double area, int n_in);

/// n_stp = round(2 * kappa * r_r / sqrt(S/n)), clamped to >= 1.
int step_length(double r_r, int n, double area, double kappa);

/// The radius and step a polish run will actually use for this instance.
double effective_radius(const PolishConfig& cfg, const Instance& inst);
int effective_step(const PolishConfig& cfg, const Instance& inst);

struct CircleStat {
  Point center;
  int selected = 0;
  double delta = 0.0;
  double seconds = 0.0;
  bool skipped = false;
  bool time_limited = false;
};

struct PassStat {
  std::vector<CircleStat> circles;
  double cost_after = 0.0;
};

struct PolishStats {
  double initial_cost = 0.0;
  double final_cost = 0.0;
  std::vector<PassStat> passes;
  bool any_time_limited = false;

  std::string to_json() const;
};

struct PolishResult {
  Tour tour;
  PolishStats stats;
};

/// Walks the tour's item sequence (anchored at the goal item when the
/// fixed pair is on, else item 1), placing a refinement circle every
/// n_stp items and adopting each improved reconstruction. Circles
/// selecting fewer than two nodes are skipped. opts.time_limit applies
/// per circle.
PolishResult polish(const Instance& inst, const Tour& t, const PolishConfig& cfg = {},
                    const SolveOptions& opts = {});

}  // namespace jra
