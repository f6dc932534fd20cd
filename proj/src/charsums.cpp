#include "shafstats/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "shafstats/error.hpp"
#include "shafstats/parallel.hpp"

namespace shafstats {

namespace {

constexpr std::size_t kSumBlock = 1 << 14;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void check_x(const ApTable& table, u64 x) {
  if (x > table.xmax()) {
    throw Error(ErrorKind::OutOfRange, "x=" + std::to_string(x) +
                                           " exceeds table bound " + std::to_string(table.xmax()));
  }
}

// Pairwise sum keeps the result independent of how blocks were scheduled.
long double pairwise_sum(std::span<const long double> v) {
  if (v.empty()) return 0.0L;
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// (a^2 - 4p) as a signed value; |a| <= 2 sqrt p keeps it in range.
i64 frobenius_disc(u64 p, i64 ap) { return ap * ap - 4 * static_cast<i64>(p); }

}  // namespace

i64 u_sum(const ApTable& table, u64 x, u64 n, unsigned threads) {
  if (n == 0 || n % 2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "u_sum: n must be odd, got " + std::to_string(n));
  }
  check_x(table, x);
  const PrimeSeq primes = primes_up_to(x);
  const auto& recs = table.records();
  const Curve& curve = table.curve();

  std::vector<i64> partial(block_count(primes.size(), kSumBlock), 0);
  parallel_blocks(primes.size(), kSumBlock, threads, [&](std::size_t begin, std::size_t end) {
    auto rec = std::lower_bound(recs.begin(), recs.end(), primes[begin],
                                [](const ApRecord& r, u64 v) { return r.p < v; });
    i64 sum = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      i64 ap = 1;
      if (p > 3 && !curve.is_bad(p)) {
        if (rec == recs.end() || rec->p != p) {
          throw Error(ErrorKind::Internal, "trace table is missing p=" + std::to_string(p));
        }
        ap = rec->ap;
        ++rec;
      }
      sum += jacobi(frobenius_disc(p, ap), n);
    }
    partial[begin / kSumBlock] = sum;
  });
  return std::accumulate(partial.begin(), partial.end(), i64{0});
}

SumReport lemma1_report(const ApTable& table, u64 x, u64 l1, u64 l2, unsigned threads) {
  if (l1 == l2) throw Error(ErrorKind::InvalidArgument, "lemma1: primes must be distinct");
  for (u64 l : {l1, l2}) {
    if (l <= 3 || !is_prime(l)) {
      throw Error(ErrorKind::InvalidArgument, "lemma1: " + std::to_string(l) + " is not a prime > 3");
    }
    if (table.curve().is_bad(l)) {
      throw Error(ErrorKind::InvalidArgument,
                  "lemma1: " + std::to_string(l) + " divides the discriminant");
    }
  }
  check_x(table, x);
  const u64 n = l1 * l2;
  const i64 value = u_sum(table, x, n, threads);
  const std::size_t pi_x = primes_up_to(x).size();
  const double denom = static_cast<double>(l1 * l1 - 1) * static_cast<double>(l2 * l2 - 1);

  SumReport r;
  r.value = static_cast<double>(value);
  r.exact = ExactValue{value, 1};
  r.main_term = static_cast<double>(pi_x) / denom;
  const double nd = static_cast<double>(n);
  r.bound = nd * nd * nd * std::sqrt(static_cast<double>(x)) *
            std::log(nd * static_cast<double>(std::max<u64>(x, 1)));
  r.residual = std::abs(r.value - r.main_term);
  r.meta = {{"x", std::to_string(x)},
            {"l1", std::to_string(l1)},
            {"l2", std::to_string(l2)},
            {"pi_x", std::to_string(pi_x)},
            {"main_term_denominator", fmt_double(denom)}};
  return r;
}

SumReport burgess_sum(u64 u, u64 v, u64 s, unsigned threads) {
  if (v < 1 || v > u) throw Error(ErrorKind::InvalidArgument, "burgess: need u >= v >= 1");
  if (s < 3 || s % 2 == 0 || !is_squarefree(s)) {
    throw Error(ErrorKind::InvalidArgument,
                "burgess: s must be odd squarefree >= 3, got " + std::to_string(s));
  }
  const u64 lo = u - v;
  const std::size_t n = static_cast<std::size_t>(v) + 1;
  std::vector<i64> partial(block_count(n, kSumBlock), 0);
  parallel_blocks(n, kSumBlock, threads, [&](std::size_t begin, std::size_t end) {
    i64 sum = 0;
    for (std::size_t i = begin; i < end; ++i) {
      sum += jacobi(static_cast<i64>((lo + i) % s), s);
    }
    partial[begin / kSumBlock] = sum;
  });
  const i64 value = std::accumulate(partial.begin(), partial.end(), i64{0});

  SumReport r;
  r.value = static_cast<double>(value);
  r.exact = ExactValue{value, 1};
  r.main_term = 0.0;
  r.bound = std::sqrt(static_cast<double>(v)) * std::pow(static_cast<double>(s), 3.0 / 16.0);
  r.residual = std::abs(r.value);
  r.meta = {{"u", std::to_string(u)}, {"v", std::to_string(v)}, {"s", std::to_string(s)}};
  return r;
}

std::map<u64, double> unit_weights(u64 X) {
  std::map<u64, double> f;
  for (u64 m = 1; m <= X; ++m) {
    if (is_squarefree(m)) f.emplace_hint(f.end(), m, 1.0);
  }
  return f;
}

SumReport hb_double_sum(u64 X, u64 Y, const std::map<u64, double>& f, unsigned threads) {
  if (X < 1 || Y < 1) throw Error(ErrorKind::InvalidArgument, "hb: need X, Y >= 1");
  std::vector<std::pair<u64, double>> weights;
  weights.reserve(f.size());
  bool integral = true;
  long double norm = 0.0L;
  for (const auto& [m, w] : f) {
    if (m == 0 || m > X || !is_squarefree(m)) {
      throw Error(ErrorKind::InvalidArgument,
                  "hb: weight key " + std::to_string(m) + " is not a squarefree m <= X");
    }
    if (w == 0.0) continue;
    weights.emplace_back(m, w);
    norm += static_cast<long double>(w) * w;
    integral = integral && std::abs(w) < 2147483648.0 && w == std::floor(w);
  }

  std::vector<u64> moduli;
  for (u64 s = 1; s <= Y; s += 2) {
    if (is_squarefree(s)) moduli.push_back(s);
  }

  const std::size_t blocks = block_count(moduli.size(), kSumBlock);
  std::vector<u128> exact_partial(blocks, 0);
  std::vector<long double> real_partial(blocks, 0.0L);
  parallel_blocks(moduli.size(), kSumBlock, threads, [&](std::size_t begin, std::size_t end) {
    u128 exact_acc = 0;
    std::vector<long double> terms;
    if (!integral) terms.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      const u64 s = moduli[i];
      if (integral) {
        i128 inner = 0;
        for (const auto& [m, w] : weights) inner += static_cast<i64>(w) * jacobi(static_cast<i64>(m), s);
        exact_acc += static_cast<u128>(inner * inner);
      } else {
        long double inner = 0.0L;
        for (const auto& [m, w] : weights) inner += static_cast<long double>(w) * jacobi(static_cast<i64>(m), s);
        terms.push_back(inner * inner);
      }
    }
    exact_partial[begin / kSumBlock] = exact_acc;
    if (!integral) real_partial[begin / kSumBlock] = pairwise_sum(terms);
  });

  SumReport r;
  if (integral) {
    u128 total = 0;
    for (u128 v : exact_partial) total += v;
    if (total > static_cast<u128>(INT64_MAX)) {
      throw Error(ErrorKind::Capacity, "hb: exact double sum exceeds 64 bits");
    }
    r.exact = ExactValue{static_cast<i64>(total), 1};
    r.value = static_cast<double>(total);
  } else {
    r.value = static_cast<double>(pairwise_sum(real_partial));
  }
  r.main_term = 0.0;
  r.bound = static_cast<double>((static_cast<long double>(X) + Y) * norm);
  r.residual = std::abs(r.value);
  r.meta = {{"X", std::to_string(X)},
            {"Y", std::to_string(Y)},
            {"moduli", std::to_string(moduli.size())},
            {"ratio", r.bound > 0.0 ? fmt_double(r.value / r.bound) : "nan"}};
  return r;
}

SieveConfig make_sieve_config(double u, double z, std::vector<u64> bad_primes) {
  if (!(z >= 2.0)) throw Error(ErrorKind::InvalidArgument, "sieve: z must be >= 2");
  if (!(u >= 1.0)) throw Error(ErrorKind::InvalidArgument, "sieve: u must be >= 1");
  SieveConfig config;
  config.u = u;
  config.z = z;
  std::sort(bad_primes.begin(), bad_primes.end());
  const auto lo = static_cast<u64>(std::ceil(z));
  const auto hi = static_cast<u64>(std::floor(2.0 * z));
  for (u64 l : primes_in_range(lo - 1, hi)) {
    if (l <= 3 || std::binary_search(bad_primes.begin(), bad_primes.end(), l)) continue;
    config.ell_primes.push_back(l);
  }
  const double lu = std::log(u);
  config.z_floor_ok = z >= lu * lu;
  return config;
}

SumReport square_sieve_rhs(const ShaTable& table, u64 m, u64 x, const SieveConfig& config,
                           unsigned threads) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "sieve: m must be >= 1");
  if (config.empty()) throw Error(ErrorKind::EmptyWindow, "sieve: no usable primes in [z, 2z]");
  const std::size_t count = table.count_up_to(x);
  const auto& recs = table.records();
  const auto& ells = config.ell_primes;

  std::vector<i64> partial(block_count(count, kSumBlock), 0);
  parallel_blocks(count, kSumBlock, threads, [&](std::size_t begin, std::size_t end) {
    i64 sum = 0;
    for (std::size_t i = begin; i < end; ++i) {
      i64 inner = 0;
      for (u64 l : ells) {
        const u64 n_mod = mulmod(m % l, recs[i].d % l, l);
        inner += jacobi(static_cast<i64>(n_mod), l);
      }
      sum += inner * inner;
    }
    partial[begin / kSumBlock] = sum;
  });
  const i64 numerator = std::accumulate(partial.begin(), partial.end(), i64{0});
  const auto L = static_cast<i64>(ells.size());
  const u64 squares = s_m(table, m, x);

  SumReport r;
  r.exact = ExactValue{numerator, L * L};
  r.value = static_cast<double>(numerator) / static_cast<double>(L * L);
  r.main_term = static_cast<double>(squares);
  r.bound = r.value;
  r.residual = std::abs(r.value - r.main_term);
  const std::size_t pi_z = primes_up_to(static_cast<u64>(std::floor(config.z))).size();
  r.meta = {{"x", std::to_string(x)},
            {"m", std::to_string(m)},
            {"z", fmt_double(config.z)},
            {"L", std::to_string(L)},
            {"pi_z", std::to_string(pi_z)},
            {"denominator", "L^2"},
            {"z_floor_ok", config.z_floor_ok ? "true" : "false"},
            {"s_m", std::to_string(squares)},
            {"ratio", squares > 0 ? fmt_double(r.value / static_cast<double>(squares)) : "inf"}};
  return r;
}

double suggested_z_long(double v, double x) { return std::pow(v * x, 4.0 / 59.0); }

double suggested_z_short(double v, double x) { return std::pow(v * x, 1.0 / 14.0); }

}  // namespace shafstats
