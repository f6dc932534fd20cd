#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace shafstats {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// ---------------------------------------------------------------------------
// Primes

struct SieveOptions {
  std::size_t block_size = std::size_t{1} << 20;
  // Largest bound accepted at all.
  u64 max_bound = u64{1} << 44;
  // Upper limit on the memory the resulting prime list may occupy.
  std::size_t memory_budget = std::size_t{4} << 30;
};

// Ascending list of every prime <= bound.
class PrimeSeq {
 public:
  PrimeSeq() = default;
  PrimeSeq(u64 bound, std::vector<u64> primes)
      : bound_(bound), primes_(std::move(primes)) {}

  u64 bound() const noexcept { return bound_; }
  std::span<const u64> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }
  u64 operator[](std::size_t i) const { return primes_[i]; }
  auto begin() const noexcept { return primes_.begin(); }
  auto end() const noexcept { return primes_.end(); }

  // pi(x) for x <= bound.
  std::size_t count_up_to(u64 x) const;

 private:
  u64 bound_ = 0;
  std::vector<u64> primes_;
};

PrimeSeq primes_up_to(u64 x, const SieveOptions& options = {});

// Primes in the half-open interval (lo, hi], segmented.
std::vector<u64> primes_in_range(u64 lo, u64 hi, const SieveOptions& options = {});

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

// ---------------------------------------------------------------------------
// Factorization

struct PrimePower {
  u64 prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  u64 n = 1;
  std::vector<PrimePower> factors;  // ascending primes
};

// Trial division to 10^6, Pollard-rho (Brent) beyond. factorize(1) is empty.
Factorization factorize(u64 n);

struct SquarefreeParts {
  u64 s;  // n = s^2 * r
  u64 r;  // squarefree
  friend bool operator==(const SquarefreeParts&, const SquarefreeParts&) = default;
};

SquarefreeParts squarefree_decompose(u64 n);
bool is_squarefree(u64 n);

// Jacobi symbol (k/n) for odd n >= 1. Throws InvalidArgument for even n.
int jacobi(i64 k, u64 n);

// ---------------------------------------------------------------------------
// Small helpers shared across modules

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 powmod(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);

u64 isqrt(u64 n);
u64 isqrt_wide(u128 n);
bool is_perfect_square(u128 n);

}  // namespace shafstats
