#include "shafstats/sha_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shafstats/error.hpp"
#include "shafstats/parallel.hpp"

namespace shafstats {

namespace {

void check_x(const ShaTable& table, u64 x) {
  if (x > table.xmax()) {
    throw Error(ErrorKind::OutOfRange, "x=" + std::to_string(x) +
                                           " exceeds table bound " + std::to_string(table.xmax()));
  }
}

// #Sha_p = t^2; t is s or s/2.
u64 sha_root(const ShaRecord& rec) { return rec.d % 2 == 0 ? rec.s / 2 : rec.s; }

}  // namespace

ShaRecord sha_size(u64 p, i64 ap) {
  const i128 d = 4 * static_cast<i128>(p) - static_cast<i128>(ap) * ap;
  if (d <= 0) {
    throw Error(ErrorKind::InvalidArgument, "sha_size: a_p^2 >= 4p at p=" + std::to_string(p));
  }
  const auto dd = static_cast<u64>(d);
  const auto [s, r] = squarefree_decompose(dd);
  const u64 sha = dd % 2 == 0 ? (s / 2) * (s / 2) : s * s;
  return {p, ap, dd, s, r, sha};
}

std::size_t ShaTable::count_up_to(u64 x) const {
  check_x(*this, x);
  return static_cast<std::size_t>(
      std::upper_bound(records_.begin(), records_.end(), x,
                       [](u64 v, const ShaRecord& r) { return v < r.p; }) -
      records_.begin());
}

ShaTable build_sha_table(const ApTable& table, unsigned threads) {
  const auto& in = table.records();
  std::vector<ShaRecord> out(in.size());
  parallel_blocks(in.size(), 4096, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sha_size(in[i].p, in[i].ap);
  });
  return ShaTable(table.xmax(), std::move(out));
}

u64 pi_ts(const ShaTable& table, u64 x) {
  const std::size_t n = table.count_up_to(x);
  const auto& recs = table.records();
  return static_cast<u64>(
      std::count_if(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(n),
                    [](const ShaRecord& r) { return r.sha == 1; }));
}

u64 pi_n(const ShaTable& table, u64 n, u64 x) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "pi_n: n must be >= 1");
  const std::size_t count = table.count_up_to(x);
  const auto& recs = table.records();
  u64 hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (sha_root(recs[i]) % n == 0) ++hits;
  }
  return hits;
}

u64 d_xy(const ShaTable& table, u64 x, double y) {
  const std::size_t count = table.count_up_to(x);
  if (!(y >= 1.0) || y > 2.0 * std::sqrt(static_cast<double>(x)) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "d_xy: y must lie in [1, 2 sqrt(x)]");
  }
  const auto first = static_cast<u64>(std::ceil(y));
  const u64 last = isqrt(4 * x);
  if (first > last) return 0;

  // n^2 | t^2 iff n | t, so D counts pairs (p, n) with n | t_p.
  const auto& recs = table.records();
  u64 max_root = 0;
  for (std::size_t i = 0; i < count; ++i) max_root = std::max(max_root, sha_root(recs[i]));
  std::vector<u64> by_root(max_root + 1, 0);
  for (std::size_t i = 0; i < count; ++i) ++by_root[sha_root(recs[i])];

  u64 total = 0;
  for (u64 n = first; n <= last && n <= max_root; ++n) {
    for (u64 t = n; t <= max_root; t += n) total += by_root[t];
  }
  return total;
}

u64 s_m(const ShaTable& table, u64 m, u64 x) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "s_m: m must be >= 1");
  const std::size_t count = table.count_up_to(x);
  const auto& recs = table.records();
  u64 hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (is_perfect_square(static_cast<u128>(m) * recs[i].d)) ++hits;
  }
  if (hits != s_m_by_kernel(table, m, x)) {
    throw Error(ErrorKind::Internal, "s_m: square test and kernel identity disagree");
  }
  return hits;
}

u64 s_m_by_kernel(const ShaTable& table, u64 m, u64 x) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "s_m: m must be >= 1");
  const std::size_t count = table.count_up_to(x);
  const u64 kernel = squarefree_decompose(m).r;
  const auto& recs = table.records();
  return static_cast<u64>(
      std::count_if(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(count),
                    [kernel](const ShaRecord& r) { return r.r == kernel; }));
}

std::map<u64, u64> sha_histogram(const ShaTable& table, u64 x) {
  const std::size_t count = table.count_up_to(x);
  std::map<u64, u64> hist;
  for (std::size_t i = 0; i < count; ++i) ++hist[table.records()[i].sha];
  return hist;
}

}  // namespace shafstats
