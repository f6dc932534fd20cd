#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "shafstats/frobenius.hpp"
#include "shafstats/sha_stats.hpp"

using namespace shafstats;

namespace {

FrobeniusIndex tiny_index() {
  return build_index(build_sha_table(ApTable(Curve(1, 1), 10, {{5, -3}, {7, 3}})));
}

}  // namespace

TEST_CASE("frobenius_m examples") {
  CHECK(frobenius_m(5, -3) == 11);
  CHECK(frobenius_m(5, 2) == 1);
  CHECK(frobenius_m(7, 3) == 19);
  CHECK_ERROR_KIND(frobenius_m(5, 6), ErrorKind::InvalidArgument);
}

TEST_CASE("build_index examples") {
  const auto idx = tiny_index();
  CHECK(idx.buckets() == std::map<u64, std::vector<u64>>{{11, {5}}, {19, {7}}});
  CHECK(build_index(ShaTable(0, {})).buckets().empty());
}

TEST_CASE("index buckets partition the good primes") {
  const ShaTable sha = build_sha_table(trace_table(Curve(-2, 7), 50000));
  const auto idx = build_index(sha);
  std::size_t total = 0;
  for (const auto& [m, ps] : idx.buckets()) {
    CHECK(is_squarefree(m));
    CHECK(std::is_sorted(ps.begin(), ps.end()));
    total += ps.size();
  }
  CHECK(total == sha.size());
  for (const auto& r : sha.records()) {
    const auto& bucket = idx.buckets().at(oracle::squarefree_trial(r.d).second);
    CHECK(std::binary_search(bucket.begin(), bucket.end(), r.p));
  }
}

TEST_CASE("pi_K") {
  const auto idx = tiny_index();
  CHECK(pi_K(idx, 11, 10) == 1);
  CHECK(pi_K(idx, 11, 4) == 0);
  CHECK(pi_K(idx, 5, 10) == 0);
  CHECK_ERROR_KIND(pi_K(idx, 12, 10), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(pi_K(idx, 11, 11), ErrorKind::OutOfRange);
}

TEST_CASE("sigma") {
  const auto idx = tiny_index();
  CHECK(sigma(idx, 10, 19, 8) == 2);
  CHECK(sigma(idx, 10, 1, 1) == 0);
  CHECK(sigma(idx, 10, 11, 0 + 1) == 1);
  CHECK_ERROR_KIND(sigma(idx, 10, 41, 8), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(sigma(idx, 10, 19, 20), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(sigma(idx, 10, 19, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("sigma agrees with a direct window count") {
  const ShaTable sha = build_sha_table(trace_table(Curve(1, 1), 20000));
  const auto idx = build_index(sha);
  for (auto [u, v] : std::vector<std::pair<u64, u64>>{{100, 50}, {5000, 4999}, {80000, 10}, {7, 7}}) {
    u64 expected = 0;
    for (const auto& r : sha.records()) {
      const u64 m = oracle::squarefree_trial(r.d).second;
      if (m + v >= u && m <= u) ++expected;
    }
    CHECK(sigma(idx, 20000, u, v) == expected);
  }
}

TEST_CASE("m_set") {
  const auto idx = tiny_index();
  const MSet all = m_set(idx, 10);
  CHECK(all.members == std::vector<u64>{11, 19});
  CHECK(all.max == 19);
  const MSet none = m_set(idx, 4);
  CHECK(none.members.empty());
  CHECK_FALSE(none.max.has_value());
}

TEST_CASE("fit through the origin") {
  const std::vector<u64> xs{100, 1000, 10000, 100000};
  std::vector<double> zeros(xs.size(), 0.0);
  CHECK(fit_sqrt_over_log(xs, zeros).degenerate());

  const double c = 0.731;
  std::vector<double> exact;
  for (u64 x : xs) exact.push_back(c * std::sqrt(double(x)) / std::log(double(x)));
  const FitReport fit = fit_sqrt_over_log(xs, exact);
  REQUIRE(fit.beta.has_value());
  CHECK(std::abs(*fit.beta - c) <= 1e-9 * c);
  for (double r : fit.residuals) CHECK(std::abs(r) < 1e-9);

  const std::vector<u64> bad{1, 10};
  CHECK_ERROR_KIND(fit_sqrt_over_log(bad, std::vector<double>{0.0, 1.0}), ErrorKind::InvalidArgument);
}

TEST_CASE("Lang-Trotter fit on a populated bucket") {
  const ShaTable sha = build_sha_table(trace_table(Curve(1, 1), 100000));
  const auto idx = build_index(sha);
  const std::vector<u64> cps{1000, 10000, 100000};
  const FitReport fit = lang_trotter_fit(idx, frobenius_m(5, -3), cps);
  REQUIRE(fit.beta.has_value());
  CHECK(*fit.beta > 0.0);
  CHECK(fit.counts.size() == cps.size());
  CHECK_ERROR_KIND(lang_trotter_fit(idx, 4, cps), ErrorKind::InvalidArgument);
}

TEST_CASE("partition identity over M(x)") {
  const ShaTable sha = build_sha_table(trace_table(Curve(1, 1), 100000));
  const auto idx = build_index(sha);
  for (u64 x : {1000ULL, 10000ULL, 100000ULL}) {
    u64 total = 0;
    for (u64 m : m_set(idx, x).members) total += pi_K(idx, m, x);
    CHECK(total == sha.count_up_to(x));
  }
}
