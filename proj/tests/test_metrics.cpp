#include <cmath>

#include "doctest.h"
#include "jra/assignment.hpp"
#include "jra/metrics.hpp"

using namespace jra;

TEST_CASE("deviation percentages format like the benchmark reports") {
  CHECK(format_deviation(deviation_pct(42.4578, 42.0017)) == "(+1.086%)");
  CHECK(format_deviation(deviation_pct(41.5209, 41.4737)) == "(+0.114%)");
  CHECK(format_deviation(deviation_pct(5.0, 5.0)) == "(+0.000%)");
  CHECK(deviation_pct(5.0, 5.0) == 0.0);
  CHECK_THROWS_AS(deviation_pct(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(deviation_pct(1.0, -2.0), DomainError);
}

TEST_CASE("deviation antisymmetry identity") {
  const double a = 37.25, b = 36.1;
  CHECK(deviation_pct(a, b) == doctest::Approx(-deviation_pct(b, a) * a / b).epsilon(1e-12));
}

TEST_CASE("move-type counts match the closed form") {
  CHECK(kopt_move_types(2).to_string() == "2");
  CHECK(kopt_move_types(3).to_string() == "8");
  CHECK(kopt_move_types(4).to_string() == "48");
  CHECK(kopt_move_types(5).to_string() == "384");
  CHECK(kopt_move_types(6).to_string() == "3840");  // 2^5 * 5!
  CHECK(kopt_move_types(10).to_string() == "185794560");
  CHECK_THROWS_AS(kopt_move_types(1), DomainError);
}

TEST_CASE("move-type recurrence MT(k) = 2(k-1) MT(k-1)") {
  for (int k = 3; k <= 30; ++k) {
    BigUint prev = kopt_move_types(k - 1);
    prev *= 2ULL * (k - 1);
    CHECK(prev == kopt_move_types(k));
  }
}

TEST_CASE("MT(50) magnitude") {
  const BigUint mt50 = kopt_move_types(50);
  CHECK(mt50.digits() == 78);  // 3.4e77
  CHECK(mt50.to_string().substr(0, 2) == "34");
  CHECK(mt50.log10() == doctest::Approx(77.53).epsilon(1e-3));
}

TEST_CASE("neighborhood size: exact hand-summed case") {
  // n=2, alpha=1: C(4,2)*2 + C(4,3)*8 + C(4,4)*48 = 12 + 32 + 48 = 92.
  const NeighborhoodSize size = large_alpha_neighborhood(2, 1.0);
  REQUIRE(size.exact.has_value());
  CHECK(size.exact->to_string() == "92");
  CHECK(size.log10_magnitude == doctest::Approx(std::log10(92.0)).epsilon(1e-9));
}

TEST_CASE("neighborhood size: empty sum below k=2") {
  const NeighborhoodSize size = large_alpha_neighborhood(20, 0.02);  // 2n*alpha = 0.8
  REQUIRE(size.exact.has_value());
  CHECK(size.exact->is_zero());
}

TEST_CASE("neighborhood magnitude grows like (4n)^(2n alpha)") {
  const int n = 300;
  const double alpha = 0.15;  // k_max = 90 > 64: estimate path
  const NeighborhoodSize size = large_alpha_neighborhood(n, alpha);
  CHECK_FALSE(size.exact.has_value());
  const double upper = 2 * n * alpha * std::log10(4.0 * n);
  CHECK(size.log10_magnitude <= upper);
  CHECK(size.log10_magnitude >= upper * 0.9);
  // The estimate agrees with the exact path where both apply.
  const NeighborhoodSize small = large_alpha_neighborhood(16, 1.0);  // k_max = 32
  REQUIRE(small.exact.has_value());
  const double approx_check = small.exact->log10();
  CHECK(small.log10_magnitude == doctest::Approx(approx_check).epsilon(1e-9));
}

TEST_CASE("big integer division is exact or throws") {
  BigUint v(123456789);
  v *= 1000000007ULL;
  BigUint w = v;
  w.divide_exact(1000000007ULL);
  CHECK(w.to_string() == "123456789");
  CHECK_THROWS_AS(BigUint(10).divide_exact(3), DomainError);
}

TEST_CASE("cycle ratio statistics over generated instances") {
  std::vector<Instance> instances;
  std::vector<CycleSet> cycles;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    instances.push_back(Instance::generate(60, seed));
    cycles.push_back(two_way_assign(instances.back()));
  }
  const CycleStatsSummary s = cycle_ratio_stats(instances, cycles);
  CHECK(s.mean_cycle_ratio > 0.05);
  CHECK(s.mean_cycle_ratio < 0.4);
  CHECK(s.mean_node_fraction > 0.05);
  CHECK(s.mean_node_fraction < 0.6);

  instances.pop_back();
  CHECK_THROWS_AS(cycle_ratio_stats(instances, cycles), DomainError);
}

TEST_CASE("single cycle set gives ratio 1/n") {
  std::vector<Instance> instances{Instance::generate(8, 1)};
  const Tour t{{1, 2, 3, 4, 5, 6, 7, 8}, {9, 10, 11, 12, 13, 14, 15, 16}};
  std::vector<CycleSet> cycles{detect_cycles(edges_of(t), 8)};
  REQUIRE(cycles[0].size() == 1);
  const CycleStatsSummary s = cycle_ratio_stats(instances, cycles);
  CHECK(s.mean_cycle_ratio == doctest::Approx(1.0 / 8).epsilon(1e-12));
  CHECK(s.mean_node_fraction == 0.0);  // one cycle, no merging, empty collector
}
