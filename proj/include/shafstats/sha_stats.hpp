#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "shafstats/curve.hpp"

namespace shafstats {

// Per-prime data derived from 4p - a_p^2 = s^2 r.
struct ShaRecord {
  u64 p;
  i64 ap;
  u64 d;    // 4p - ap^2
  u64 s;
  u64 r;    // squarefree kernel of d
  u64 sha;  // s^2 if d is odd, s^2 / 4 if d is even
  friend bool operator==(const ShaRecord&, const ShaRecord&) = default;
};

// Throws InvalidArgument unless ap^2 < 4p.
ShaRecord sha_size(u64 p, i64 ap);

class ShaTable {
 public:
  ShaTable(u64 xmax, std::vector<ShaRecord> records)
      : xmax_(xmax), records_(std::move(records)) {}

  u64 xmax() const noexcept { return xmax_; }
  const std::vector<ShaRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  // Records with p <= x. Throws OutOfRange for x > xmax.
  std::size_t count_up_to(u64 x) const;

 private:
  u64 xmax_;
  std::vector<ShaRecord> records_;
};

ShaTable build_sha_table(const ApTable& table, unsigned threads = 1);

// #{p <= x : #Sha_p = 1}
u64 pi_ts(const ShaTable& table, u64 x);

// #{p <= x : n^2 | #Sha_p}
u64 pi_n(const ShaTable& table, u64 n, u64 x);

// sum of pi_n(x) over integers n in [ceil(y), floor(2 sqrt x)].
u64 d_xy(const ShaTable& table, u64 x, double y);

// #{p <= x : m (4p - a_p^2) is a perfect square}. Computed by a direct
// square test and cross-checked against the squarefree kernel.
u64 s_m(const ShaTable& table, u64 m, u64 x);

// Kernel route only: m d is a square iff kernel(m) = r_p.
u64 s_m_by_kernel(const ShaTable& table, u64 m, u64 x);

std::map<u64, u64> sha_histogram(const ShaTable& table, u64 x);

}  // namespace shafstats
