#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shafstats/curve.hpp"
#include "shafstats/sha_stats.hpp"

namespace shafstats {

struct ExactValue {
  i64 numerator;
  i64 denominator;  // > 0
  friend bool operator==(const ExactValue&, const ExactValue&) = default;
};

// A computed sum next to the quantity it is compared with.
struct SumReport {
  double value = 0.0;
  double main_term = 0.0;
  double bound = 0.0;
  double residual = 0.0;  // |value - main_term|
  std::optional<ExactValue> exact;
  std::vector<std::pair<std::string, std::string>> meta;
};

// U(x; n) = sum over all primes p <= x of ((a_p^2 - 4p) / n), with a_p = 1 at
// bad primes and at p = 2, 3. n must be odd.
i64 u_sum(const ApTable& table, u64 x, u64 n, unsigned threads = 1);

// U(x; l1 l2) against pi(x) / ((l1^2 - 1)(l2^2 - 1)); bound is
// (l1 l2)^3 sqrt(x) log(l1 l2 x).
SumReport lemma1_report(const ApTable& table, u64 x, u64 l1, u64 l2, unsigned threads = 1);

// sum_{u-v <= m <= u} (m / s) for odd squarefree s >= 3; bound v^(1/2) s^(3/16).
SumReport burgess_sum(u64 u, u64 v, u64 s, unsigned threads = 1);

// Weight 1 on every squarefree m <= X.
std::map<u64, double> unit_weights(u64 X);

// sum over odd squarefree s <= Y of |sum over squarefree m <= X of f(m) (m/s)|^2
// against (X + Y) sum |f(m)|^2. Keys of f must be squarefree and <= X. Integral
// weights are summed exactly.
SumReport hb_double_sum(u64 X, u64 Y, const std::map<u64, double>& f, unsigned threads = 1);

struct SieveConfig {
  double u = 0.0;
  double z = 0.0;
  std::vector<u64> ell_primes;  // primes in [z, 2z], > 3, not bad
  bool z_floor_ok = false;      // z >= (log u)^2
  bool empty() const noexcept { return ell_primes.empty(); }
};

// An empty window is returned as is; square_sieve_rhs rejects it.
SieveConfig make_sieve_config(double u, double z, std::vector<u64> bad_primes);

// (1/L^2) sum_{p <= x} (sum_{l in window} (m d_p / l))^2 with L the window
// size; reports S_m(x) as the main term.
SumReport square_sieve_rhs(const ShaTable& table, u64 m, u64 x, const SieveConfig& config,
                           unsigned threads = 1);

// Window sizes used to balance the sieve in the two averaging regimes.
double suggested_z_long(double v, double x);   // (v x)^(4/59)
double suggested_z_short(double v, double x);  // (v x)^(1/14)

}  // namespace shafstats
