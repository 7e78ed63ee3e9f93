#include <random>

#include "doctest.h"
#include "jra/merging.hpp"
#include "jra/ppr.hpp"
#include "oracle.hpp"

using namespace jra;

namespace {

std::set<NodeId> random_selection(const Instance& inst, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed * 7919 + 13);
  std::set<NodeId> v_s;
  while (static_cast<int>(v_s.size()) < count) {
    v_s.insert(static_cast<NodeId>(rng() % (2 * inst.n())) + 1);
  }
  return v_s;
}

}  // namespace

TEST_CASE("releasing every node reduces to the original problem") {
  const Instance inst = Instance::generate(5, 8);
  const Tour t = testing::random_tour(inst, 2);
  std::set<NodeId> all;
  for (NodeId v = 1; v <= 10; ++v) all.insert(v);
  const ReducedProblem rp = break_tour(inst, t, all);
  CHECK(rp.segments.empty());
  CHECK(rp.reserved.empty());
  CHECK(rp.temporary.empty());
  CHECK(rp.removed.size() == 10);
  CHECK(rp.offset_cost == 0.0);
  CHECK(rp.child_pairs() == 5);
  CHECK(rp.fixed_edge_in_child);

  const ReducedSolveResult res = solve_reduced(inst, rp);
  REQUIRE(res.status == SolveStatus::optimal);
  const Tour rec = recover(rp, res.edges, 5);
  CHECK(tour_cost(inst, rec) == doctest::Approx(testing::brute_force_instance(inst).cost));
}

TEST_CASE("empty selection is rejected") {
  const Instance inst = Instance::generate(4, 0);
  CHECK_THROWS_AS(break_tour(inst, testing::random_tour(inst, 0), {}), ValidationError);
}

TEST_CASE("single released item: structure matches a hand trace") {
  // n = 5, release one interior item v. Removing v's two edges leaves a
  // 9-node path with placeholder ends; normalization releases the
  // smaller-id end placeholder, leaving one 4-pair segment, 7 reserved
  // edges, 1 temporary edge, and 3 removed edges.
  const Instance inst = Instance::generate(5, 17);
  const Tour t = testing::random_tour(inst, 4);
  const NodeId victim = t.q_I[1] == 5 ? t.q_I[2] : t.q_I[1];  // avoid the goal item
  const ReducedProblem rp = break_tour(inst, t, {victim});

  REQUIRE(rp.segments.size() == 1);
  const Segment& seg = rp.segments[0];
  CHECK(seg.items.size() == 4);
  CHECK(seg.placeholders.size() == 4);
  CHECK_FALSE(seg.single_pair);
  CHECK(rp.reserved.size() == 7);
  CHECK(rp.temporary.size() == 1);
  CHECK(rp.removed.size() == 3);
  CHECK(rp.free_nodes.size() == 2);  // the item plus the normalized placeholder
  CHECK(rp.reserved.size() + rp.removed.size() == 10);

  // Independent re-derivation by plain set arithmetic on the tour edges.
  const EdgeSet tour_edges = edges_of(t);
  EdgeSet expect_removed;
  for (const Edge& e : tour_edges) {
    if (e.item == victim) expect_removed.insert(e);
  }
  CHECK(expect_removed.size() == 2);
  for (const Edge& e : expect_removed) CHECK(rp.removed.contains(e));

  // Offset equals the summed interior costs.
  double interior = 0.0;
  for (const Edge& e : rp.reserved) interior += inst.cost(e.item, e.placeholder);
  CHECK(rp.offset_cost == doctest::Approx(interior).epsilon(1e-15));
}

TEST_CASE("forcing the removed edges back reproduces the tour exactly") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const Instance inst = Instance::generate(n, seed + 500);
    const Tour t = testing::random_tour(inst, seed);
    const auto v_s = random_selection(inst, seed, 1 + static_cast<int>(seed % 5));
    const ReducedProblem rp = break_tour(inst, t, v_s);

    SolveOptions opts;
    opts.forced_edges = rp.removed;
    const ReducedSolveResult res = solve_reduced(inst, rp, opts);
    REQUIRE(res.status == SolveStatus::optimal);
    const Tour rec = recover(rp, res.edges, n);
    CHECK(edges_of(rec) == edges_of(t));
  }
}

TEST_CASE("random recoveries are valid, never worse, and match the child oracle") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 8;
    const Instance inst = Instance::generate(n, seed + 900);
    const Tour t = testing::random_tour(inst, seed);
    const double before = tour_cost(inst, t);
    const auto v_s = random_selection(inst, seed, 4);
    const ReducedProblem rp = break_tour(inst, t, v_s);
    const ReducedSolveResult res = solve_reduced(inst, rp);
    REQUIRE(res.status == SolveStatus::optimal);
    const Tour rec = recover(rp, res.edges, n);
    const double after = tour_cost(inst, rec);
    CHECK(after <= before + 1e-9);
    CHECK(after == doctest::Approx(res.objective + rp.offset_cost).epsilon(1e-9));

    // Child-problem oracle over the reduced instance, when small enough.
    const DenseProblem child = reduced_dense(inst, rp);
    if (child.m() <= 6) {
      testing::OracleConstraints cons;
      for (const Segment& seg : rp.segments) {
        cons.forced.insert(seg.start_item, seg.end_placeholder);
      }
      if (rp.fixed_edge_in_child) cons.forced.insert(n, 2 * n);
      const auto oracle = testing::brute_force_dense(child, cons);
      REQUIRE(oracle.feasible);
      CHECK(res.objective == doctest::Approx(oracle.cost).epsilon(1e-9));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("edge accounting holds for every selection size") {
  const Instance inst = Instance::generate(12, 3);
  const Tour t = testing::random_tour(inst, 7);
  for (int count = 1; count <= 24; count += 3) {
    const auto v_s = random_selection(inst, count, count);
    const ReducedProblem rp = break_tour(inst, t, v_s);
    CHECK(rp.reserved.size() + rp.removed.size() == 24);
    CHECK(rp.temporary.size() <= rp.segments.size());
    for (const Edge& e : rp.temporary) CHECK_FALSE(rp.reserved.contains(e));
    for (const Segment& seg : rp.segments) {
      CHECK(seg.single_pair == (seg.items.size() == 1));
      CHECK(seg.interior.size() == seg.items.size() + seg.placeholders.size() - 1);
    }
    // Every node is free or in exactly one segment.
    std::vector<int> where(25, 0);
    for (NodeId v : rp.free_nodes) ++where[v];
    for (const Segment& seg : rp.segments) {
      for (NodeId v : seg.items) ++where[v];
      for (NodeId v : seg.placeholders) ++where[v];
    }
    for (NodeId v = 1; v <= 24; ++v) CHECK(where[v] == 1);
  }
}

TEST_CASE("fixed-pair endpoints released still produce fixed-pair tours") {
  const Instance inst = Instance::generate(6, 21);
  REQUIRE(inst.fixed_pair_enabled());
  const Tour t = testing::random_tour(inst, 3);
  for (const std::set<NodeId>& v_s :
       {std::set<NodeId>{6}, std::set<NodeId>{12}, std::set<NodeId>{6, 12}}) {
    const ReducedProblem rp = break_tour(inst, t, v_s);
    CHECK(rp.fixed_edge_in_child);
    const ReducedSolveResult res = solve_reduced(inst, rp);
    REQUIRE(res.status == SolveStatus::optimal);
    const Tour rec = recover(rp, res.edges, 6);
    CHECK(edges_of(rec).contains({6, 12}));
    CHECK_NOTHROW(validate_tour(inst, rec));
  }
}

TEST_CASE("refine_merge is a no-op on an empty collector and never worsens") {
  const Instance inst = Instance::generate(15, 31);
  const MergeResult merged = merge_cycles(inst, two_way_assign(inst));

  const RefineResult unchanged = refine_merge(inst, merged.tour, {});
  CHECK(unchanged.tour == merged.tour);

  const RefineResult refined = refine_merge(inst, merged.tour, merged.collected);
  CHECK(tour_cost(inst, refined.tour) <= tour_cost(inst, merged.tour) + 1e-9);
  CHECK_NOTHROW(validate_tour(inst, refined.tour));
}
