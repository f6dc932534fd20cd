#include "shafstats/arith.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "shafstats/error.hpp"

namespace shafstats {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

std::vector<u64> simple_sieve(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> primes = simple_sieve(kTrialLimit);
  return primes;
}

void check_capacity(u64 x, const SieveOptions& options) {
  if (x > options.max_bound) {
    throw Error(ErrorKind::Capacity,
                "sieve bound " + std::to_string(x) + " exceeds limit " +
                    std::to_string(options.max_bound));
  }
  if (x < 17) return;
  // pi(x) < 1.25506 x / log x for x > 1.
  const double estimate = 1.25506 * static_cast<double>(x) / std::log(static_cast<double>(x));
  if (estimate * sizeof(u64) > static_cast<double>(options.memory_budget)) {
    throw Error(ErrorKind::Capacity,
                "bound too large for segmented sieve: " + std::to_string(x) +
                    " needs more than the configured memory budget");
  }
}

// Appends primes in (lo, hi] using the given base primes (which must cover
// sqrt(hi)).
void sieve_segments(u64 lo, u64 hi, std::span<const u64> base, std::size_t block,
                    std::vector<u64>& out) {
  if (hi <= lo) return;
  if (block == 0) block = 1;
  std::vector<std::uint8_t> mark;
  for (u64 seg_lo = lo + 1; seg_lo <= hi;) {
    const u64 seg_hi = std::min<u64>(hi, seg_lo + block - 1);
    mark.assign(seg_hi - seg_lo + 1, 1);
    for (u64 q : base) {
      if (q * q > seg_hi) break;
      u64 start = std::max(q * q, (seg_lo + q - 1) / q * q);
      for (u64 j = start; j <= seg_hi; j += q) mark[j - seg_lo] = 0;
    }
    for (u64 v = seg_lo; v <= seg_hi; ++v) {
      if (v >= 2 && mark[v - seg_lo]) out.push_back(v);
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

bool miller_rabin_round(u64 n, u64 d, unsigned r, u64 a) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SingularCurve: return "singular-curve";
    case ErrorKind::BadPrime: return "bad-prime";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::EmptyWindow: return "empty-window";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Io: return "io";
    case ErrorKind::Format: return "format";
    case ErrorKind::Checksum: return "checksum";
    case ErrorKind::CurveMismatch: return "curve-mismatch";
    case ErrorKind::Version: return "version";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

std::size_t PrimeSeq::count_up_to(u64 x) const {
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) -
                                  primes_.begin());
}

PrimeSeq primes_up_to(u64 x, const SieveOptions& options) {
  check_capacity(x, options);
  const u64 root = isqrt(x);
  std::vector<u64> base = simple_sieve(root);
  std::vector<u64> out;
  if (x >= 17) {
    out.reserve(static_cast<std::size_t>(1.25506 * static_cast<double>(x) /
                                         std::log(static_cast<double>(x))));
  }
  out.insert(out.end(), base.begin(), base.end());
  sieve_segments(root, x, base, options.block_size, out);
  return PrimeSeq(x, std::move(out));
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& options) {
  check_capacity(hi, options);
  std::vector<u64> out;
  if (hi <= lo) return out;
  const std::vector<u64> base = simple_sieve(isqrt(hi));
  sieve_segments(lo, hi, base, options.block_size, out);
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  if (n < 37 * 37) return true;
  u64 d = n - 1;
  const auto r = static_cast<unsigned>(std::countr_zero(d));
  d >>= r;
  // Witness set deterministic for every n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    if (!miller_rabin_round(n, d, r, a)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "factorize: n must be >= 1");
  Factorization result;
  result.n = n;
  u64 rest = n;
  for (u64 q : trial_primes()) {
    if (q * q > rest) break;
    if (rest % q != 0) continue;
    unsigned e = 0;
    while (rest % q == 0) {
      rest /= q;
      ++e;
    }
    result.factors.push_back({q, e});
  }
  if (rest > 1) {
    std::vector<u64> big;
    split_into(rest, big);
    std::sort(big.begin(), big.end());
    for (u64 q : big) {
      if (!result.factors.empty() && result.factors.back().prime == q) {
        ++result.factors.back().exponent;
      } else {
        result.factors.push_back({q, 1});
      }
    }
  }
  return result;
}

SquarefreeParts squarefree_decompose(u64 n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "squarefree_decompose: n must be >= 1");
  u64 s = 1, r = 1;
  for (const auto& [q, e] : factorize(n).factors) {
    for (unsigned i = 0; i < e / 2; ++i) s *= q;
    if (e % 2 == 1) r *= q;
  }
  return {s, r};
}

bool is_squarefree(u64 n) { return squarefree_decompose(n).s == 1; }

int jacobi(i64 k, u64 n) {
  if (n == 0 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument,
                "jacobi: modulus must be odd and positive, got " + std::to_string(n));
  }
  const u64 magnitude = k < 0 ? static_cast<u64>(-(k + 1)) + 1 : static_cast<u64>(k);
  u64 a = magnitude % n;
  if (k < 0 && a != 0) a = n - a;
  int t = 1;
  while (a != 0) {
    const int z = std::countr_zero(a);
    a >>= z;
    if ((z & 1) && (n % 8 == 3 || n % 8 == 5)) t = -t;
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? t : 0;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 isqrt(u64 n) {
  auto r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u64 isqrt_wide(u128 n) {
  if (n <= UINT64_MAX) return isqrt(static_cast<u64>(n));
  // sqrt(n) < 2^64 for every n < 2^128.
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  if (r > UINT64_MAX) r = UINT64_MAX;
  while (r * r > n) --r;
  while (r < UINT64_MAX && (r + 1) * (r + 1) <= n) ++r;
  return static_cast<u64>(r);
}

bool is_perfect_square(u128 n) {
  const u128 r = isqrt_wide(n);
  return r * r == n;
}

}  // namespace shafstats
