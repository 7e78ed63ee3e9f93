#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "jra/instance.hpp"

namespace jra {

/// An undirected item-placeholder edge.
struct Edge {
  NodeId item = 0;
  NodeId placeholder = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Ordered set of bipartite edges. Plain value container; structural
/// invariants (degrees, connectivity) are checked by the operations
/// that require them.
class EdgeSet {
public:
  EdgeSet() = default;
  EdgeSet(std::initializer_list<Edge> edges) : edges_(edges) {}

  void insert(Edge e) { edges_.insert(e); }
  void insert(NodeId item, NodeId placeholder) { edges_.insert({item, placeholder}); }
  bool erase(Edge e) { return edges_.erase(e) > 0; }
  bool contains(Edge e) const { return edges_.count(e) > 0; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }

  bool operator==(const EdgeSet&) const = default;

private:
  std::set<Edge> edges_;
};

/// |a \ b| + |b \ a|; the N_d statistic.
std::size_t edge_difference(const EdgeSet& a, const EdgeSet& b);

/// Feasible tour as two aligned orderings: item q_I(k) is adjacent to
/// placeholders q_P(k-1) and q_P(k), indices cyclic.
struct Tour {
  std::vector<NodeId> q_I;
  std::vector<NodeId> q_P;

  int n() const { return static_cast<int>(q_I.size()); }
  bool operator==(const Tour&) const = default;
};

/// Throws ValidationError naming the violated invariant.
void validate_tour(const Instance& inst, const Tour& t);

/// Sum of the 2n induced edge costs. Validates first.
double tour_cost(const Instance& inst, const Tour& t);

/// The 2n edges induced by the alternating cycle.
EdgeSet edges_of(const Tour& t);

/// Reconstructs the ordered sequences from a single-cycle edge set.
/// Canonical form: starts at item 1, oriented so the placeholder that
/// follows item 1 is the smaller of its two neighbors.
/// Throws DegreeError / SubtourError on structural violations.
Tour cycle_path(const EdgeSet& edges, int n);

/// Tour JSON: {"q_I": [...], "q_P": [...], "cost": float}.
std::string tour_to_json(const Instance& inst, const Tour& t);
Tour tour_from_json(const std::string& text);
void save_tour(const Instance& inst, const Tour& t, const std::filesystem::path& file);
Tour load_tour(const std::filesystem::path& file);

}  // namespace jra
