#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "shafstats/sha_stats.hpp"

namespace shafstats {

// Squarefree m such that Q(sqrt(-m)) is generated by a Frobenius root, i.e.
// the squarefree kernel of 4p - a_p^2.
u64 frobenius_m(u64 p, i64 ap);

// Primes bucketed by their Frobenius field Q(sqrt(-m)).
class FrobeniusIndex {
 public:
  FrobeniusIndex(u64 xmax, std::map<u64, std::vector<u64>> by_m)
      : xmax_(xmax), by_m_(std::move(by_m)) {}

  u64 xmax() const noexcept { return xmax_; }
  const std::map<u64, std::vector<u64>>& buckets() const noexcept { return by_m_; }

 private:
  u64 xmax_;
  std::map<u64, std::vector<u64>> by_m_;
};

FrobeniusIndex build_index(const ShaTable& table);

// Pi(K_m, x). Throws InvalidArgument if m is not squarefree.
u64 pi_K(const FrobeniusIndex& index, u64 m, u64 x);

// sum of Pi(K_m, x) over squarefree m in [u - v, u]; requires 4x >= u >= v >= 1.
u64 sigma(const FrobeniusIndex& index, u64 x, u64 u, u64 v);

struct MSet {
  std::vector<u64> members;  // ascending
  std::optional<u64> max;    // empty when no prime <= x
};

MSet m_set(const FrobeniusIndex& index, u64 x);

struct FitReport {
  std::optional<double> beta;  // empty when degenerate
  std::vector<u64> xs;
  std::vector<double> counts;
  std::vector<double> fitted;
  std::vector<double> residuals;
  bool degenerate() const noexcept { return !beta.has_value(); }
};

// Weight-one least squares of counts against sqrt(x) / log(x) through the
// origin. Every x must be >= 2.
FitReport fit_sqrt_over_log(std::span<const u64> xs, std::span<const double> counts);

// The same fit for Pi(K_m, x) at the given checkpoints.
FitReport lang_trotter_fit(const FrobeniusIndex& index, u64 m, std::span<const u64> checkpoints);

}  // namespace shafstats
