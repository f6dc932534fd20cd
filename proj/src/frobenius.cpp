#include "shafstats/frobenius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shafstats/error.hpp"

namespace shafstats {

namespace {

void check_x(const FrobeniusIndex& index, u64 x) {
  if (x > index.xmax()) {
    throw Error(ErrorKind::OutOfRange, "x=" + std::to_string(x) +
                                           " exceeds index bound " + std::to_string(index.xmax()));
  }
}

u64 count_le(const std::vector<u64>& primes, u64 x) {
  return static_cast<u64>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

double regressor(u64 x) {
  const auto xd = static_cast<double>(x);
  return std::sqrt(xd) / std::log(xd);
}

}  // namespace

u64 frobenius_m(u64 p, i64 ap) {
  const i128 d = 4 * static_cast<i128>(p) - static_cast<i128>(ap) * ap;
  if (d <= 0) {
    throw Error(ErrorKind::InvalidArgument, "frobenius_m: a_p^2 >= 4p at p=" + std::to_string(p));
  }
  return squarefree_decompose(static_cast<u64>(d)).r;
}

FrobeniusIndex build_index(const ShaTable& table) {
  std::map<u64, std::vector<u64>> by_m;
  // Records are ascending in p, so each bucket comes out ascending too.
  for (const auto& rec : table.records()) by_m[rec.r].push_back(rec.p);
  return FrobeniusIndex(table.xmax(), std::move(by_m));
}

u64 pi_K(const FrobeniusIndex& index, u64 m, u64 x) {
  if (m == 0 || !is_squarefree(m)) {
    throw Error(ErrorKind::InvalidArgument, "pi_K: m=" + std::to_string(m) + " is not squarefree");
  }
  check_x(index, x);
  const auto it = index.buckets().find(m);
  return it == index.buckets().end() ? 0 : count_le(it->second, x);
}

u64 sigma(const FrobeniusIndex& index, u64 x, u64 u, u64 v) {
  if (v < 1 || v > u || static_cast<u128>(u) > 4 * static_cast<u128>(x)) {
    throw Error(ErrorKind::InvalidArgument, "sigma: need 4x >= u >= v >= 1");
  }
  check_x(index, x);
  // Bucket keys are squarefree kernels, so the squarefree filter is implicit.
  u64 total = 0;
  const auto& buckets = index.buckets();
  for (auto it = buckets.lower_bound(u - v); it != buckets.end() && it->first <= u; ++it) {
    total += count_le(it->second, x);
  }
  return total;
}

MSet m_set(const FrobeniusIndex& index, u64 x) {
  check_x(index, x);
  MSet out;
  for (const auto& [m, primes] : index.buckets()) {
    if (!primes.empty() && primes.front() <= x) out.members.push_back(m);
  }
  if (!out.members.empty()) out.max = out.members.back();
  return out;
}

FitReport fit_sqrt_over_log(std::span<const u64> xs, std::span<const double> counts) {
  if (xs.size() != counts.size()) {
    throw Error(ErrorKind::InvalidArgument, "fit: checkpoint and count lengths differ");
  }
  FitReport report;
  report.xs.assign(xs.begin(), xs.end());
  report.counts.assign(counts.begin(), counts.end());
  double sxy = 0.0, sxx = 0.0;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 2) throw Error(ErrorKind::InvalidArgument, "fit: checkpoints must be >= 2");
    const double g = regressor(xs[i]);
    sxy += g * counts[i];
    sxx += g * g;
    any_nonzero = any_nonzero || counts[i] != 0.0;
  }
  if (!any_nonzero || sxx == 0.0) return report;
  const double beta = sxy / sxx;
  report.beta = beta;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = beta * regressor(xs[i]);
    report.fitted.push_back(f);
    report.residuals.push_back(counts[i] - f);
  }
  return report;
}

FitReport lang_trotter_fit(const FrobeniusIndex& index, u64 m, std::span<const u64> checkpoints) {
  std::vector<double> counts;
  counts.reserve(checkpoints.size());
  for (u64 x : checkpoints) counts.push_back(static_cast<double>(pi_K(index, m, x)));
  return fit_sqrt_over_log(checkpoints, counts);
}

}  // namespace shafstats
