#include "jra/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "jra/merging.hpp"

namespace jra {

double deviation_pct(double candidate, double reference) {
  if (!(reference > 0.0)) {
    throw DomainError("deviation reference must be positive");
  }
  return 100.0 * (candidate - reference) / reference;
}

std::string format_deviation(double pct) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "(%+.3f%%)", pct);
  return buf;
}

BigUint::BigUint(std::uint64_t v) {
  if (v) limbs_.push_back(v);
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigUint& BigUint::operator+=(const BigUint& other) {
  const std::size_t size = std::max(limbs_.size(), other.limbs_.size());
  limbs_.resize(size, 0);
  unsigned __int128 carry = 0;
  for (std::size_t i = 0; i < size; ++i) {
    unsigned __int128 sum = carry + limbs_[i];
    if (i < other.limbs_.size()) sum += other.limbs_[i];
    limbs_[i] = static_cast<std::uint64_t>(sum);
    carry = sum >> 64;
  }
  if (carry) limbs_.push_back(static_cast<std::uint64_t>(carry));
  return *this;
}

BigUint& BigUint::operator*=(std::uint64_t small) {
  if (small == 0 || is_zero()) {
    limbs_.clear();
    return *this;
  }
  unsigned __int128 carry = 0;
  for (auto& limb : limbs_) {
    unsigned __int128 prod = static_cast<unsigned __int128>(limb) * small + carry;
    limb = static_cast<std::uint64_t>(prod);
    carry = prod >> 64;
  }
  while (carry) {
    limbs_.push_back(static_cast<std::uint64_t>(carry));
    carry >>= 64;
  }
  return *this;
}

BigUint BigUint::operator*(const BigUint& other) const {
  BigUint out;
  if (is_zero() || other.is_zero()) return out;
  out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    unsigned __int128 carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * other.limbs_[j] +
                              out.limbs_[i + j] + carry;
      out.limbs_[i + j] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    std::size_t k = i + other.limbs_.size();
    while (carry) {
      unsigned __int128 cur = carry + out.limbs_[k];
      out.limbs_[k] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
      ++k;
    }
  }
  out.trim();
  return out;
}

BigUint& BigUint::divide_exact(std::uint64_t divisor) {
  if (divisor == 0) throw DomainError("division by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    unsigned __int128 cur = (rem << 64) | limbs_[i];
    limbs_[i] = static_cast<std::uint64_t>(cur / divisor);
    rem = cur % divisor;
  }
  if (rem != 0) throw DomainError("division was not exact");
  trim();
  return *this;
}

std::string BigUint::to_string() const {
  if (is_zero()) return "0";
  // Repeated division by 10^19 yields decimal chunks.
  constexpr std::uint64_t kChunk = 10000000000000000000ULL;
  std::vector<std::uint64_t> work(limbs_.rbegin(), limbs_.rend());  // big-endian
  std::string out;
  while (!work.empty()) {
    unsigned __int128 rem = 0;
    std::vector<std::uint64_t> next;
    for (std::uint64_t limb : work) {
      unsigned __int128 cur = (rem << 64) | limb;
      const std::uint64_t q = static_cast<std::uint64_t>(cur / kChunk);
      rem = cur % kChunk;
      if (!next.empty() || q != 0) next.push_back(q);
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), next.empty() ? "%llu" : "%019llu",
                  static_cast<unsigned long long>(rem));
    out.insert(0, buf);
    work = std::move(next);
  }
  return out;
}

double BigUint::log10() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  const std::size_t top = limbs_.size() - 1;
  double value = static_cast<double>(limbs_[top]);
  if (top >= 1) value += static_cast<double>(limbs_[top - 1]) * 0x1.0p-64;
  return std::log10(value) + 64.0 * std::log10(2.0) * static_cast<double>(top);
}

int BigUint::digits() const { return static_cast<int>(to_string().size()); }

BigUint kopt_move_types(int k) {
  if (k < 2) {
    throw DomainError("move types defined for k >= 2");
  }
  // MT(k) = 2(k-1) * MT(k-1), MT(2) = 2.
  BigUint mt(2);
  for (int j = 3; j <= k; ++j) {
    mt *= 2ULL * static_cast<std::uint64_t>(j - 1);
  }
  return mt;
}

NeighborhoodSize large_alpha_neighborhood(int n, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw DomainError("alpha must lie in (0, 1]");
  }
  NeighborhoodSize out;
  const int two_n = 2 * n;
  const int k_max = static_cast<int>(std::floor(two_n * alpha + 1e-12));
  if (k_max < 2) {
    out.exact = BigUint{};  // empty sum
    out.log10_magnitude = -std::numeric_limits<double>::infinity();
    return out;
  }

  if (k_max <= 64) {
    BigUint total;
    BigUint binom(1);  // C(2n, k), built incrementally
    for (int k = 1; k <= k_max; ++k) {
      binom *= static_cast<std::uint64_t>(two_n - k + 1);
      binom.divide_exact(static_cast<std::uint64_t>(k));
      if (k >= 2) {
        total += binom * kopt_move_types(k);
      }
    }
    out.log10_magnitude = total.log10();
    out.exact = std::move(total);
    return out;
  }

  // Magnitude estimate: N ~ (1/2) * sum (4n)^k / k, accumulated in
  // log10 space.
  const double log4n = std::log10(4.0 * n);
  double log_sum = -std::numeric_limits<double>::infinity();
  for (int k = 2; k <= k_max; ++k) {
    const double term = k * log4n - std::log10(static_cast<double>(k));
    if (log_sum == -std::numeric_limits<double>::infinity()) {
      log_sum = term;
    } else {
      const double hi = std::max(log_sum, term), lo = std::min(log_sum, term);
      log_sum = hi + std::log10(1.0 + std::pow(10.0, lo - hi));
    }
  }
  out.log10_magnitude = log_sum - std::log10(2.0);
  return out;
}

CycleStatsSummary cycle_ratio_stats(const std::vector<Instance>& instances,
                                    const std::vector<CycleSet>& results) {
  if (instances.size() != results.size()) {
    throw DomainError("cycle_ratio_stats requires parallel lists of equal length");
  }
  if (instances.empty()) {
    throw DomainError("cycle_ratio_stats requires at least one instance");
  }
  CycleStatsSummary summary;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const int n = instances[i].n();
    summary.mean_cycle_ratio += static_cast<double>(results[i].size()) / n;
    const MergeResult merged = merge_cycles(instances[i], results[i]);
    summary.mean_node_fraction +=
        static_cast<double>(merged.collected.size()) / (2.0 * n + 2.0);
  }
  summary.mean_cycle_ratio /= static_cast<double>(instances.size());
  summary.mean_node_fraction /= static_cast<double>(instances.size());
  return summary;
}

}  // namespace jra
