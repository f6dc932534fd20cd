#include <doctest.h>

#include <algorithm>
#include <vector>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "shafstats/arith.hpp"

using namespace shafstats;

TEST_CASE("primes_up_to small bounds") {
  CHECK(primes_up_to(0).empty());
  CHECK(primes_up_to(1).empty());
  const auto p10 = primes_up_to(10);
  CHECK(std::vector<u64>(p10.begin(), p10.end()) == std::vector<u64>{2, 3, 5, 7});
  CHECK(p10.bound() == 10);
  CHECK(primes_up_to(2).size() == 1);
}

TEST_CASE("primes_up_to agrees with a plain sieve") {
  for (u64 n : {3ULL, 97ULL, 100ULL, 4096ULL, 65537ULL, 200000ULL}) {
    const auto got = primes_up_to(n);
    CHECK(std::vector<u64>(got.begin(), got.end()) == oracle::eratosthenes(n));
  }
}

TEST_CASE("segment boundaries do not drop primes") {
  SieveOptions opts;
  opts.block_size = 64;
  const auto got = primes_up_to(30000, opts);
  CHECK(std::vector<u64>(got.begin(), got.end()) == oracle::eratosthenes(30000));
}

TEST_CASE("prime counts") {
  CHECK(primes_up_to(1'000'000).size() == 78498);
  const auto p = primes_up_to(100000);
  CHECK(p.size() == 9592);
  CHECK(p.count_up_to(100) == 25);
  CHECK(p.count_up_to(1) == 0);
  CHECK(p.count_up_to(7) == 4);
}

TEST_CASE("primes_in_range is half open on the left") {
  CHECK(primes_in_range(7, 20) == std::vector<u64>{11, 13, 17, 19});
  CHECK(primes_in_range(20, 20).empty());
  const auto all = oracle::eratosthenes(5000);
  std::vector<u64> tail;
  std::copy_if(all.begin(), all.end(), std::back_inserter(tail), [](u64 q) { return q > 1234; });
  CHECK(primes_in_range(1234, 5000) == tail);
}

TEST_CASE("capacity error when the sieve bound is too large") {
  SieveOptions opts;
  opts.memory_budget = 1024;
  CHECK_ERROR_KIND(primes_up_to(10'000'000, opts), ErrorKind::Capacity);
  SieveOptions tight;
  tight.max_bound = 1000;
  CHECK_ERROR_KIND(primes_up_to(1001, tight), ErrorKind::Capacity);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(1'000'000'000'039ULL));
  CHECK(oracle::is_prime_trial(1'000'000'000'039ULL));
  CHECK_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime(3825123056546413051ULL));  // strong pseudoprime to bases up to 37
  CHECK(is_prime(18446744073709551557ULL));       // largest 64-bit prime
  for (u64 n = 0; n < 20000; ++n) {
    REQUIRE(is_prime(n) == oracle::is_prime_trial(n));
  }
}

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(48).factors == std::vector<PrimePower>{{2, 4}, {3, 1}});
  CHECK_ERROR_KIND(factorize(0), ErrorKind::InvalidArgument);

  const u64 p = 1'099'511'627'791ULL;  // prime near 2^40
  const u64 q = 1'000'003ULL;
  REQUIRE(is_prime(p));
  REQUIRE(is_prime(q));
  const auto f = factorize(p * q);
  CHECK(f.factors == std::vector<PrimePower>{{q, 1}, {p, 1}});

  const u64 a = 4'294'967'291ULL, b = 4'294'967'279ULL;  // two primes near 2^32
  CHECK(factorize(a * b).factors == std::vector<PrimePower>{{b, 1}, {a, 1}});
}

TEST_CASE("factorize matches trial division and reconstructs n") {
  std::uniform_int_distribution<u64> dist(2, 1ULL << 40);
  for (int i = 0; i < 300; ++i) {
    const u64 n = dist(testing::rng());
    const auto f = factorize(n);
    const auto expect = oracle::factor_trial(n);
    REQUIRE(f.factors.size() == expect.size());
    u64 product = 1;
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(f.factors[k].prime == expect[k].first);
      CHECK(f.factors[k].exponent == expect[k].second);
      for (unsigned e = 0; e < f.factors[k].exponent; ++e) product *= f.factors[k].prime;
    }
    CHECK(product == n);
  }
}

TEST_CASE("squarefree_decompose") {
  CHECK(squarefree_decompose(1) == SquarefreeParts{1, 1});
  CHECK(squarefree_decompose(48) == SquarefreeParts{4, 3});
  CHECK(squarefree_decompose(16) == SquarefreeParts{4, 1});
  CHECK_ERROR_KIND(squarefree_decompose(0), ErrorKind::InvalidArgument);
  for (u64 n = 1; n < 5000; ++n) {
    const auto [s, r] = oracle::squarefree_trial(n);
    REQUIRE(squarefree_decompose(n) == SquarefreeParts{s, r});
  }
}

TEST_CASE("is_squarefree") {
  CHECK(is_squarefree(1));
  CHECK_FALSE(is_squarefree(12));
  CHECK(is_squarefree(11));
  for (u64 n = 1; n < 3000; ++n) {
    REQUIRE(is_squarefree(n) == (oracle::squarefree_trial(n).first == 1));
  }
}

TEST_CASE("jacobi examples") {
  CHECK(jacobi(1, 9) == 1);
  CHECK(jacobi(3, 9) == 0);
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(3, 7) == -1);
  CHECK(jacobi(5, 1) == 1);
  CHECK(jacobi(0, 1) == 1);
  CHECK(jacobi(-7, 7) == 0);
  CHECK(jacobi(-11, 7) == -1);
  CHECK_ERROR_KIND(jacobi(3, 8), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(jacobi(3, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("jacobi agrees with Euler criterion on composite moduli") {
  for (u64 n = 1; n < 400; n += 2) {
    for (i64 k = -450; k <= 450; k += 7) {
      REQUIRE(jacobi(k, n) == oracle::jacobi_by_factors(k, n));
    }
  }
}

TEST_CASE("jacobi handles extreme arguments") {
  CHECK(jacobi(INT64_MIN, 1'000'000'007ULL) == oracle::legendre_euler(INT64_MIN, 1'000'000'007ULL));
  CHECK(jacobi(INT64_MIN, 3) == oracle::legendre_euler(INT64_MIN, 3));
  CHECK(jacobi(INT64_MAX, 1'000'000'007ULL) ==
        oracle::legendre_euler(INT64_MAX % 1'000'000'007LL, 1'000'000'007ULL));
  CHECK(jacobi(-1, 1'000'000'007ULL) == -1);
}

TEST_CASE("integer square roots") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(isqrt(UINT64_MAX) == 4294967295ULL);
  const u128 big = static_cast<u128>(UINT64_MAX) * UINT64_MAX;
  CHECK(isqrt_wide(big) == UINT64_MAX);
  CHECK(is_perfect_square(big));
  CHECK_FALSE(is_perfect_square(big - 1));
  CHECK(is_perfect_square(0));
  CHECK(is_perfect_square(121));
  CHECK_FALSE(is_perfect_square(22));
}

TEST_CASE("powmod and gcd") {
  CHECK(powmod(3, 6, 7) == 1);
  CHECK(powmod(2, 64, 18446744073709551557ULL) ==
        oracle::powmod_slow(2, 64, 18446744073709551557ULL));
  CHECK(gcd(0, 5) == 5);
  CHECK(gcd(48, 180) == 12);
}
