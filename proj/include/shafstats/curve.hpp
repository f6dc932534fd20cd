#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

#include "shafstats/arith.hpp"

namespace shafstats {

// y^2 = x^3 + a x + b over Q.
class Curve {
 public:
  // Throws SingularCurve when the discriminant vanishes, InvalidArgument when
  // it does not fit in 64 bits.
  Curve(i64 a, i64 b);

  i64 a() const noexcept { return a_; }
  i64 b() const noexcept { return b_; }
  // -16 (4a^3 + 27b^2)
  i64 delta() const noexcept { return delta_; }
  // Primes dividing delta, together with 2 and 3. Ascending.
  const std::vector<u64>& bad_primes() const noexcept { return bad_primes_; }
  bool is_bad(u64 p) const;

  friend bool operator==(const Curve& x, const Curve& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  i64 a_;
  i64 b_;
  i64 delta_;
  std::vector<u64> bad_primes_;
};

inline Curve new_curve(i64 a, i64 b) { return Curve(a, b); }

struct Rational {
  i128 num;
  i128 den;  // > 0, gcd(num, den) = 1
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::string to_string(i128 v);
std::string to_string(const Rational& q);

// 6912 a^3 / (4a^3 + 27b^2) in lowest terms.
Rational j_invariant(const Curve& curve);

// True iff j is one of the thirteen rational CM j-invariants.
bool is_cm(const Curve& curve);

// Number of rational roots of x^3 + a x + b (0, 1 or 3). Fewer than three
// means the curve has an irrational point of order two.
int rational_two_torsion_roots(const Curve& curve);

// ---------------------------------------------------------------------------
// Frobenius traces

struct ApRecord {
  u64 p;
  i64 ap;
  friend bool operator==(const ApRecord&, const ApRecord&) = default;
};

// Traces for every good prime 3 < p <= xmax, ascending.
class ApTable {
 public:
  // Validates ordering, goodness, p <= xmax and the Hasse bound.
  ApTable(Curve curve, u64 xmax, std::vector<ApRecord> records);

  const Curve& curve() const noexcept { return curve_; }
  u64 xmax() const noexcept { return xmax_; }
  const std::vector<ApRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  // Number of records with p <= x.
  std::size_t count_up_to(u64 x) const;

  friend bool operator==(const ApTable& x, const ApTable& y) {
    return x.curve_ == y.curve_ && x.xmax_ == y.xmax_ && x.records_ == y.records_;
  }

 private:
  Curve curve_;
  u64 xmax_;
  std::vector<ApRecord> records_;
};

struct TraceOptions {
  unsigned threads = 1;
  // Primes at or below this use the O(p) character sum.
  u64 naive_threshold = 10'000;
  SieveOptions sieve{};
  // Incremented once per prime whose trace is computed, when set.
  std::atomic<u64>* computed = nullptr;
};

// Smallest prime for which the curve/twist order argument is guaranteed to
// single out the group order.
inline constexpr u64 kBsgsMinPrime = 457;

// a_p = -sum_x (x^3+ax+b / p). Throws BadPrime for p <= 3 or p | delta.
i64 ap_naive(const Curve& curve, u64 p);

// Same value via baby-step giant-step on the curve and its quadratic twist.
// Routes to ap_naive for p <= 457.
i64 ap_bsgs(const Curve& curve, u64 p);

ApTable trace_table(const Curve& curve, u64 x, const TraceOptions& options = {});

// Records for the good primes in (lo, hi].
std::vector<ApRecord> trace_range(const Curve& curve, u64 lo, u64 hi,
                                  const TraceOptions& options = {});

}  // namespace shafstats
