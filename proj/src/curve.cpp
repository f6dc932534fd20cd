#include "shafstats/curve.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "shafstats/error.hpp"

namespace shafstats {

namespace {

constexpr i64 kMaxA = i64{1} << 30;
constexpr i64 kMaxB = i64{1} << 45;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

i128 cube(i64 v) { return static_cast<i128>(v) * v * v; }

// Rational CM j-invariants (class number one orders).
constexpr std::array<i64, 13> kCmJ = {
    0,
    1728,
    -3375,
    8000,
    54000,
    287496,
    -32768,
    16581375,
    -884736,
    -12288000,
    -884736000,
    -147197952000,
    -262537412640768000,
};

}  // namespace

Curve::Curve(i64 a, i64 b) : a_(a), b_(b), delta_(0) {
  if (a > kMaxA || a < -kMaxA || b > kMaxB || b < -kMaxB) {
    throw Error(ErrorKind::InvalidArgument, "curve coefficients out of supported range");
  }
  const i128 inner = 4 * cube(a) + 27 * static_cast<i128>(b) * b;
  const i128 delta = -16 * inner;
  if (delta == 0) {
    throw Error(ErrorKind::SingularCurve,
                "singular curve: a=" + std::to_string(a) + " b=" + std::to_string(b));
  }
  if (delta > INT64_MAX || delta < INT64_MIN) {
    throw Error(ErrorKind::InvalidArgument, "discriminant does not fit in 64 bits");
  }
  delta_ = static_cast<i64>(delta);

  const u64 magnitude = static_cast<u64>(abs128(delta));
  bad_primes_ = {2, 3};
  for (const auto& f : factorize(magnitude).factors) {
    if (f.prime > 3) bad_primes_.push_back(f.prime);
  }
}

bool Curve::is_bad(u64 p) const {
  return std::binary_search(bad_primes_.begin(), bad_primes_.end(), p);
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  auto u = static_cast<u128>(negative ? -v : v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string to_string(const Rational& q) { return to_string(q.num) + "/" + to_string(q.den); }

Rational j_invariant(const Curve& curve) {
  i128 num = 6912 * cube(curve.a());
  i128 den = 4 * cube(curve.a()) + 27 * static_cast<i128>(curve.b()) * curve.b();
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  return {num / g, den / g};
}

bool is_cm(const Curve& curve) {
  const Rational j = j_invariant(curve);
  if (j.den != 1) return false;
  return std::find(kCmJ.begin(), kCmJ.end(), j.num) != kCmJ.end();
}

int rational_two_torsion_roots(const Curve& curve) {
  const i64 a = curve.a(), b = curve.b();
  if (b == 0) {
    // x (x^2 + a); a != 0 for a nonsingular curve.
    if (a > 0) return 1;
    const auto k = static_cast<i64>(isqrt(static_cast<u64>(-a)));
    return k * k == -a ? 3 : 1;
  }
  // A rational root of a monic integer cubic is an integer dividing b.
  const u64 mag = static_cast<u64>(b < 0 ? -b : b);
  std::vector<u64> divisors{1};
  for (const auto& [q, e] : factorize(mag).factors) {
    const std::size_t n = divisors.size();
    u64 power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= q;
      for (std::size_t k = 0; k < n; ++k) divisors.push_back(divisors[k] * power);
    }
  }
  int roots = 0;
  for (u64 d : divisors) {
    for (i128 r : {static_cast<i128>(d), -static_cast<i128>(d)}) {
      // r^3 + a r + b = 0  <=>  r^2 + a = -b / r, avoiding the cube.
      if (r * r + a == -static_cast<i128>(b) / r) ++roots;
    }
  }
  return roots;
}

ApTable::ApTable(Curve curve, u64 xmax, std::vector<ApRecord> records)
    : curve_(std::move(curve)), xmax_(xmax), records_(std::move(records)) {
  u64 previous = 0;
  for (const auto& rec : records_) {
    if (rec.p <= previous) {
      throw Error(ErrorKind::Format, "trace records not strictly ascending at p=" +
                                         std::to_string(rec.p));
    }
    if (rec.p > xmax_ || rec.p <= 3 || curve_.is_bad(rec.p)) {
      throw Error(ErrorKind::Format, "trace record for excluded prime p=" + std::to_string(rec.p));
    }
    if (static_cast<i128>(rec.ap) * rec.ap >= 4 * static_cast<i128>(rec.p)) {
      throw Error(ErrorKind::Format, "trace record violates the Hasse bound at p=" +
                                         std::to_string(rec.p));
    }
    previous = rec.p;
  }
}

std::size_t ApTable::count_up_to(u64 x) const {
  return static_cast<std::size_t>(
      std::upper_bound(records_.begin(), records_.end(), x,
                       [](u64 v, const ApRecord& r) { return v < r.p; }) -
      records_.begin());
}

}  // namespace shafstats
