#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jra/assignment.hpp"
#include "jra/instance.hpp"

namespace jra {

/// 100 * (candidate - reference) / reference.
double deviation_pct(double candidate, double reference);

/// Report style: "(+1.086%)", three decimals.
std::string format_deviation(double pct);

/// Minimal unsigned big integer; enough for the k-opt combinatorics.
class BigUint {
public:
  BigUint() = default;
  explicit BigUint(std::uint64_t v);

  BigUint& operator+=(const BigUint& other);
  BigUint& operator*=(std::uint64_t small);
  BigUint operator*(const BigUint& other) const;
  /// Exact division by a small divisor; remainder must be zero.
  BigUint& divide_exact(std::uint64_t divisor);

  bool operator==(const BigUint& other) const = default;
  bool is_zero() const { return limbs_.empty(); }

  std::string to_string() const;
  double log10() const;
  /// Decimal digit count.
  int digits() const;

private:
  void trim();
  std::vector<std::uint64_t> limbs_;  // little-endian base 2^64
};

/// MT(k) = 2^(k-1) * (k-1)!: the number of distinct k-opt move types.
/// Throws DomainError for k < 2.
BigUint kopt_move_types(int k);

struct NeighborhoodSize {
  std::optional<BigUint> exact;  // set when 2n*alpha <= 64
  double log10_magnitude = 0.0;
};

/// N_total(alpha, n) = sum_{k=2}^{floor(2n*alpha)} C(2n, k) * MT(k).
/// Exact for small exponents; otherwise a base-10 magnitude estimate via
/// C(2n, k) ~ (2n)^k / k!.
NeighborhoodSize large_alpha_neighborhood(int n, double alpha);

struct CycleStatsSummary {
  double mean_cycle_ratio = 0.0;    // mean of cycles / n
  double mean_node_fraction = 0.0;  // mean of |N_clc| / (2n + 2)
};

/// Merge-seeding statistics over parallel instance/cycle-set lists; runs
/// the merge to obtain each collector.
CycleStatsSummary cycle_ratio_stats(const std::vector<Instance>& instances,
                                    const std::vector<CycleSet>& results);

}  // namespace jra
