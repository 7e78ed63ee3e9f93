#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jra/errors.hpp"

namespace jra {

/// 1-based node identifier. For an instance with n pairs, ids 1..n are
/// items and ids n+1..2n are placeholders. Item n is the designated goal
/// and placeholder 2n the designated start when the fixed pair is enabled.
using NodeId = std::int32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

/// Problem definition: n items and n placeholders with planar coordinates.
/// Traversal cost between an item and a placeholder is their Euclidean
/// distance, computed from raw coordinates. Immutable after construction
/// (build_cost_cache must be called before sharing across threads).
class Instance {
public:
  Instance(std::vector<Point> items, std::vector<Point> placeholders,
           bool fixed_pair = true, double area = 1.0);

  /// Uniform i.i.d. coordinates over a square of the given area.
  /// Deterministic function of (n, seed, area).
  static Instance generate(int n, std::uint64_t seed, double area = 1.0);

  static Instance load(const std::filesystem::path& file);
  static Instance from_json_string(const std::string& text);
  void save(const std::filesystem::path& file) const;
  std::string to_json_string() const;

  int n() const { return n_; }
  int node_count() const { return 2 * n_; }
  bool fixed_pair_enabled() const { return fixed_pair_; }
  double area() const { return area_; }

  bool is_item(NodeId v) const { return 1 <= v && v <= n_; }
  bool is_placeholder(NodeId v) const { return n_ < v && v <= 2 * n_; }
  NodeId goal_item() const { return n_; }
  NodeId start_placeholder() const { return 2 * n_; }

  const Point& coord(NodeId v) const;

  /// Euclidean traversal cost. Only item -> placeholder pairs are
  /// connectable; anything else throws NonConnectableError.
  double cost(NodeId item, NodeId placeholder) const;

  /// Opt-in dense n x n cost cache (n <= 2000).
  void build_cost_cache();
  bool has_cost_cache() const { return !cache_.empty(); }

  bool operator==(const Instance& other) const;

private:
  int n_;
  std::vector<Point> items_;
  std::vector<Point> placeholders_;
  bool fixed_pair_;
  double area_;
  std::vector<double> cache_;  // n*n, row = item-1, col = placeholder-n-1
};

}  // namespace jra
