#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "shafstats/sha_stats.hpp"

using namespace shafstats;

namespace {

// A record with the requested sha value and d = (2 sqrt(sha))^2, even.
ShaRecord synthetic(u64 p, u64 sha) {
  const u64 s = 2 * static_cast<u64>(std::llround(std::sqrt(static_cast<double>(sha))));
  return ShaRecord{p, 0, s * s, s, 1, sha};
}

bool square_slow(u64 v) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v;
}

const ShaTable& table_1_1() {
  static const ShaTable t = build_sha_table(trace_table(Curve(1, 1), 100000));
  return t;
}

}  // namespace

TEST_CASE("sha_size examples") {
  CHECK(sha_size(5, -3) == ShaRecord{5, -3, 11, 1, 11, 1});
  CHECK(sha_size(5, 2) == ShaRecord{5, 2, 16, 4, 1, 4});
  CHECK(sha_size(7, 0) == ShaRecord{7, 0, 28, 2, 7, 1});
  CHECK(sha_size(7, 3) == ShaRecord{7, 3, 19, 1, 19, 1});
  CHECK_ERROR_KIND(sha_size(5, 5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(sha_size(4, 4), ErrorKind::InvalidArgument);
}

TEST_CASE("build_sha_table examples") {
  const Curve c(1, 1);
  const ShaTable t = build_sha_table(ApTable(c, 7, {{5, -3}, {7, 3}}));
  REQUIRE(t.size() == 2);
  CHECK(t.records()[0] == ShaRecord{5, -3, 11, 1, 11, 1});
  CHECK(t.records()[1] == ShaRecord{7, 3, 19, 1, 19, 1});
  CHECK(build_sha_table(ApTable(c, 4, {})).size() == 0);
}

TEST_CASE("every sha value is a perfect square and obeys the size formula") {
  for (const auto& r : table_1_1().records()) {
    REQUIRE(r.d == 4 * r.p - static_cast<u64>(r.ap * r.ap));
    const auto [s, kernel] = oracle::squarefree_trial(r.d);
    REQUIRE(r.s == s);
    REQUIRE(r.r == kernel);
    REQUIRE(r.sha == (r.d % 2 == 1 ? s * s : s * s / 4));
    REQUIRE(square_slow(r.sha));
    REQUIRE(r.sha <= 4 * r.p);
  }
}

TEST_CASE("sha table does not depend on the thread count") {
  const ApTable t = trace_table(Curve(1, 1), 20000);
  CHECK(build_sha_table(t, 1).records() == build_sha_table(t, 5).records());
}

TEST_CASE("pi_ts") {
  const ShaTable t(11, {synthetic(5, 1), synthetic(7, 1), synthetic(11, 4)});
  CHECK(pi_ts(t, 11) == 2);
  CHECK(pi_ts(t, 4) == 0);
  CHECK(pi_ts(t, 6) == 1);
  CHECK_ERROR_KIND(pi_ts(t, 12), ErrorKind::OutOfRange);
}

TEST_CASE("pi_ts agrees with exhaustive point counts") {
  const ShaTable sha = build_sha_table(trace_table(Curve(1, 1), 1000));
  u64 expected = 0;
  for (u64 p : oracle::eratosthenes(1000)) {
    if (p <= 3 || p == 31) continue;
    const i64 ap = oracle::ap_exhaustive(1, 1, p);
    const u64 d = 4 * p - static_cast<u64>(ap * ap);
    const u64 s = oracle::squarefree_trial(d).first;
    const u64 size = d % 2 == 1 ? s * s : s * s / 4;
    if (size == 1) ++expected;
  }
  CHECK(pi_ts(sha, 1000) == expected);
}

TEST_CASE("pi_n") {
  const ShaTable t(5, {synthetic(5, 4)});
  CHECK(pi_n(t, 1, 5) == 1);
  CHECK(pi_n(t, 2, 5) == 1);
  CHECK(pi_n(t, 3, 5) == 0);
  CHECK_ERROR_KIND(pi_n(t, 0, 5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(pi_n(t, 1, 6), ErrorKind::OutOfRange);
  const auto& big = table_1_1();
  CHECK(pi_n(big, 1, 100000) == big.count_up_to(100000));
}

TEST_CASE("d_xy examples") {
  const ShaTable t(5, {synthetic(5, 4)});
  CHECK(d_xy(t, 5, 2.0) == 1);
  CHECK(d_xy(t, 5, 1.0) == 2);  // n = 1 and n = 2
  CHECK(d_xy(t, 5, 2.0 * std::sqrt(5.0)) == 0);
  CHECK_ERROR_KIND(d_xy(t, 5, 0.5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(d_xy(t, 5, 5.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(d_xy(t, 6, 2.0), ErrorKind::OutOfRange);
}

TEST_CASE("d_xy agrees with a direct sum over n") {
  const auto& t = table_1_1();
  for (u64 x : {100ULL, 5000ULL, 100000ULL}) {
    const u64 top = static_cast<u64>(std::floor(2.0 * std::sqrt(static_cast<double>(x))));
    for (double y : {1.0, 2.0, 2.5, 7.0, 30.0}) {
      if (y > 2.0 * std::sqrt(static_cast<double>(x))) continue;
      u64 expected = 0;
      for (u64 n = static_cast<u64>(std::ceil(y)); n <= top; ++n) {
        for (const auto& r : t.records()) {
          if (r.p <= x && r.sha % (n * n) == 0) ++expected;
        }
      }
      CHECK_MESSAGE(d_xy(t, x, y) == expected, "x=", x, " y=", y);
    }
  }
}

TEST_CASE("d_xy is non-increasing in y") {
  const auto& t = table_1_1();
  u64 previous = UINT64_MAX;
  for (double y = 1.0; y <= 600.0; y += 3.5) {
    const u64 d = d_xy(t, 100000, y);
    CHECK(d <= previous);
    previous = d;
  }
}

TEST_CASE("s_m examples") {
  const ShaTable t(5, {sha_size(5, -3)});
  CHECK(s_m(t, 11, 5) == 1);
  CHECK(s_m(t, 2, 5) == 0);
  CHECK(s_m(t, 11, 4) == 0);
  CHECK_ERROR_KIND(s_m(t, 0, 5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(s_m(t, 1, 6), ErrorKind::OutOfRange);
}

TEST_CASE("s_m agrees with a direct square test") {
  const auto& t = table_1_1();
  for (u64 m : {1ULL, 2ULL, 3ULL, 7ULL, 11ULL, 12ULL, 19ULL, 44ULL, 83ULL}) {
    u64 expected = 0;
    for (const auto& r : t.records()) {
      if (r.p <= 50000 && square_slow(m * r.d)) ++expected;
    }
    CHECK(s_m(t, m, 50000) == expected);
    CHECK(s_m_by_kernel(t, m, 50000) == expected);
  }
}

TEST_CASE("sha_histogram") {
  const ShaTable t(11, {synthetic(5, 1), synthetic(7, 1), synthetic(11, 4)});
  CHECK(sha_histogram(t, 11) == std::map<u64, u64>{{1, 2}, {4, 1}});
  CHECK(sha_histogram(ShaTable(0, {}), 0).empty());
  const auto h = sha_histogram(table_1_1(), 10000);
  REQUIRE_FALSE(h.empty());
  CHECK(h.rbegin()->first <= 40000);
  u64 total = 0;
  for (const auto& [k, v] : h) total += v;
  CHECK(total == table_1_1().count_up_to(10000));
}
