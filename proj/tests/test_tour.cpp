#include <algorithm>

#include "doctest.h"
#include "jra/instance.hpp"
#include "jra/tour.hpp"
#include "oracle.hpp"

using namespace jra;

namespace {

Instance unit_square() {
  // items (0,0), (1,1); placeholders (1,0), (0,1); fixed pair off
  return Instance({{0, 0}, {1, 1}}, {{1, 0}, {0, 1}}, false, 1.0);
}

}  // namespace

TEST_CASE("unit-square cycle costs 4") {
  const Instance inst = unit_square();
  const Tour t{{1, 2}, {3, 4}};
  CHECK(tour_cost(inst, t) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("tour cost is invariant under rotation and reversal") {
  const Instance inst = Instance::generate(7, 5);
  const Tour t = testing::random_tour(inst, 1);
  const double base = tour_cost(inst, t);

  Tour rotated = t;
  std::rotate(rotated.q_I.begin(), rotated.q_I.begin() + 3, rotated.q_I.end());
  std::rotate(rotated.q_P.begin(), rotated.q_P.begin() + 3, rotated.q_P.end());
  CHECK(tour_cost(inst, rotated) == doctest::Approx(base).epsilon(1e-12));
  CHECK(edges_of(rotated) == edges_of(t));

  // Reversal keeps the same undirected edge set: walk the cycle the
  // other way starting from the same item.
  Tour reversed = t;
  std::reverse(reversed.q_I.begin(), reversed.q_I.end());
  std::rotate(reversed.q_I.begin(), reversed.q_I.end() - 1, reversed.q_I.end());
  std::reverse(reversed.q_P.begin(), reversed.q_P.end());
  CHECK(edges_of(reversed) == edges_of(t));
  CHECK(tour_cost(inst, reversed) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("invalid tours are rejected with the violated invariant") {
  const Instance inst = Instance::generate(3, 0);
  CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 2}, {4, 5}}), ValidationError);      // short
  CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 2, 2}, {4, 5, 6}}), ValidationError);  // repeat
  CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 2, 4}, {3, 5, 6}}), ValidationError);  // wrong side
  // fixed pair (3, 6) missing
  CHECK_THROWS_AS(tour_cost(inst, Tour{{1, 3, 2}, {4, 5, 6}}), ValidationError);
}

TEST_CASE("edges_of yields the alternating 4-cycle for n=2") {
  const Tour t{{1, 2}, {3, 4}};
  const EdgeSet expected{{1, 3}, {1, 4}, {2, 3}, {2, 4}};
  CHECK(edges_of(t) == expected);
}

TEST_CASE("edges_of gives every node degree 2") {
  const Tour t{{1, 2, 3}, {4, 5, 6}};
  const EdgeSet edges = edges_of(t);
  CHECK(edges.size() == 6);
  std::vector<int> degree(7, 0);
  for (const Edge& e : edges) {
    ++degree[e.item];
    ++degree[e.placeholder];
  }
  for (int v = 1; v <= 6; ++v) CHECK(degree[v] == 2);
}

TEST_CASE("cycle_path round-trips edges_of in canonical form") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7);
    const Instance inst = Instance::generate(n, seed);
    const Tour t = testing::random_tour(inst, seed);
    const EdgeSet edges = edges_of(t);
    const Tour canon = cycle_path(edges, n);
    CHECK(edges_of(canon) == edges);
    CHECK(canon.q_I.front() == 1);
    // Canonical orientation: first placeholder is item 1's smaller neighbor.
    NodeId lo = 2 * n + 1;
    for (const Edge& e : edges) {
      if (e.item == 1) lo = std::min(lo, e.placeholder);
    }
    CHECK(canon.q_P.front() == lo);
    // Idempotent once canonical.
    CHECK(cycle_path(edges_of(canon), n) == canon);
  }
}

TEST_CASE("cycle_path reports subtours with component pair sizes") {
  // Two disjoint 2-pair cycles on n = 4.
  EdgeSet edges;
  for (const auto& [i, p] : {std::pair{1, 5}, {1, 6}, {2, 5}, {2, 6},
                             {3, 7}, {3, 8}, {4, 7}, {4, 8}}) {
    edges.insert(i, p);
  }
  CHECK_THROWS_AS(cycle_path(edges, 4), SubtourError);
  try {
    cycle_path(edges, 4);
  } catch (const SubtourError& e) {
    CHECK(e.component_pairs() == std::vector<int>{2, 2});
  }
}

TEST_CASE("cycle_path names the node with a bad degree") {
  const EdgeSet edges{{1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}, {3, 6}};  // node 4 has degree 3
  try {
    cycle_path(edges, 3);
    CHECK(false);
  } catch (const DegreeError& e) {
    CHECK(e.node() == 4);
  }
}

TEST_CASE("edge_difference is the symmetric difference size") {
  const EdgeSet a{{1, 5}, {2, 6}, {3, 7}, {4, 8}};
  CHECK(edge_difference(a, a) == 0);
  const EdgeSet b{{1, 6}, {2, 5}, {3, 8}, {4, 7}};
  CHECK(edge_difference(a, b) == 8);
  const EdgeSet c{{1, 5}, {2, 6}, {3, 8}, {4, 7}};
  CHECK(edge_difference(a, c) == 4);
}

TEST_CASE("n=5 minimum over random tours matches the enumeration oracle") {
  const Instance inst = Instance::generate(5, 42);
  const auto oracle = testing::brute_force_instance(inst);
  REQUIRE(oracle.feasible);
  double best_random = 1e100;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    best_random = std::min(best_random, tour_cost(inst, testing::random_tour(inst, seed)));
  }
  CHECK(best_random >= oracle.cost - 1e-9);
  CHECK(tour_cost(inst, cycle_path(oracle.edges, 5)) == doctest::Approx(oracle.cost));
}
