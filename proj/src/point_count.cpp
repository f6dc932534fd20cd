// Frobenius traces of y^2 = x^3 + ax + b modulo p.
//
// Small primes use the character sum a_p = -sum_x ((x^3+ax+b)/p). Larger
// primes find the group order N = p + 1 - a_p inside the Hasse interval by
// baby-step giant-step order computations on random points of the curve and
// of its quadratic twist (order p + 1 + a_p). The candidate set for a_p is cut
// down by the lcm of the point orders seen on each side until one value is
// left; for p > 457 one of the two groups always contains a point whose order
// has a unique multiple in the interval, so the loop terminates.

#include <random>
#include <string>
#include <unordered_map>

#include "shafstats/curve.hpp"
#include "shafstats/error.hpp"
#include "shafstats/parallel.hpp"

namespace shafstats {

namespace {

constexpr u64 kTableNaiveLimit = u64{1} << 26;
constexpr int kBsgsAttempts = 256;

u64 reduce(i64 v, u64 p) {
  const i64 r = v % static_cast<i64>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(p) : r);
}

void check_good(const Curve& curve, u64 p) {
  if (p <= 3 || curve.is_bad(p)) {
    throw Error(ErrorKind::BadPrime, "p=" + std::to_string(p) + " is not a good prime > 3");
  }
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 point_seed(const Curve& curve, u64 p) {
  u64 h = splitmix64(static_cast<u64>(curve.a()));
  h = splitmix64(h ^ static_cast<u64>(curve.b()));
  return splitmix64(h ^ p);
}

u64 inverse_mod(u64 v, u64 p) {
  i128 t = 0, new_t = 1;
  i128 r = p, new_r = v;
  while (new_r != 0) {
    const i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<u64>(t);
}

// Tonelli-Shanks; n must be a nonzero quadratic residue.
u64 sqrt_mod(u64 n, u64 p) {
  if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
  u64 q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  u64 z = 2;
  while (jacobi(static_cast<i64>(z), p) != -1) ++z;
  u64 m = s;
  u64 c = powmod(z, q, p);
  u64 t = powmod(n, q, p);
  u64 r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0;
    u64 t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 k = 0; k + 1 < m - i; ++k) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

struct Point {
  u64 x = 0;
  u64 y = 0;
  bool inf = true;
};

// Affine arithmetic on y^2 = x^3 + ax + b over F_p.
class FpCurve {
 public:
  FpCurve(u64 a, u64 b, u64 p) : a_(a), b_(b), p_(p) {}

  u64 rhs(u64 x) const {
    const u64 x2 = mulmod(x, x, p_);
    return (mulmod(x2 + a_, x, p_) + b_) % p_;
  }

  Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lambda;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p_ == 0) return {};
      const u64 num = (3 * mulmod(P.x, P.x, p_) + a_) % p_;
      lambda = mulmod(num, inverse_mod(2 * P.y % p_, p_), p_);
    } else {
      const u64 num = (Q.y + p_ - P.y) % p_;
      const u64 den = (Q.x + p_ - P.x) % p_;
      lambda = mulmod(num, inverse_mod(den, p_), p_);
    }
    const u64 x3 = (mulmod(lambda, lambda, p_) + 2 * p_ - P.x - Q.x) % p_;
    const u64 y3 = (mulmod(lambda, (P.x + p_ - x3) % p_, p_) + p_ - P.y) % p_;
    return {x3, y3, false};
  }

  Point mul(Point P, u64 k) const {
    Point result;
    while (k) {
      if (k & 1) result = add(result, P);
      P = add(P, P);
      k >>= 1;
    }
    return result;
  }

  Point random_point(std::mt19937_64& rng) const {
    for (;;) {
      const u64 x = rng() % p_;
      const u64 f = rhs(x);
      if (f == 0) return {x, 0, false};
      if (jacobi(static_cast<i64>(f), p_) == 1) return {x, sqrt_mod(f, p_), false};
    }
  }

  // Some M > 0 with M P = O, searched over [lo, hi] with baby steps of
  // size about sqrt(hi - lo).
  u64 multiple_in(const Point& P, u64 lo, u64 hi) const {
    const u64 m = isqrt(hi - lo) + 1;
    std::unordered_map<u64, u64> baby;
    baby.reserve(2 * m);
    std::vector<Point> steps(m + 1);
    Point R;
    for (u64 j = 1; j <= m; ++j) {
      R = add(R, P);
      if (R.inf) return j;
      steps[j] = R;
      const auto [it, inserted] = baby.emplace(R.x, j);
      if (!inserted) {
        // jP = +-kP with k < j.
        const u64 k = it->second;
        return steps[k].y == R.y ? j - k : j + k;
      }
    }
    const u64 stride = 2 * m + 1;
    const Point giant = mul(P, stride);
    u64 c = lo + m;
    Point Q = mul(P, c);
    while (c <= hi + m) {
      if (Q.inf) return c;
      if (auto it = baby.find(Q.x); it != baby.end()) {
        const u64 j = it->second;
        return steps[j].y == Q.y ? c - j : c + j;
      }
      c += stride;
      Q = add(Q, giant);
    }
    throw Error(ErrorKind::Internal, "no multiple of the point order in the Hasse interval");
  }

  u64 order(const Point& P, u64 lo, u64 hi) const {
    const u64 multiple = multiple_in(P, lo, hi);
    u64 n = multiple;
    for (const auto& [q, e] : factorize(multiple).factors) {
      for (unsigned i = 0; i < e; ++i) {
        if (!mul(P, n / q).inf) break;
        n /= q;
      }
    }
    return n;
  }

 private:
  u64 a_, b_, p_;
};

u64 lcm_bounded(u64 x, u64 y) {
  return static_cast<u64>(static_cast<u128>(x / gcd(x, y)) * y);
}

i64 ap_naive_table(u64 a, u64 b, u64 p) {
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (u64 y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 x2 = x * x % p;
    const u64 f = ((x2 + a) % p * x + b) % p;
    sum += chi[f];
  }
  return -sum;
}

}  // namespace

i64 ap_naive(const Curve& curve, u64 p) {
  check_good(curve, p);
  const u64 a = reduce(curve.a(), p);
  const u64 b = reduce(curve.b(), p);
  if (p <= kTableNaiveLimit) return ap_naive_table(a, b, p);
  const FpCurve E(a, b, p);
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) sum += jacobi(static_cast<i64>(E.rhs(x)), p);
  return -sum;
}

i64 ap_bsgs(const Curve& curve, u64 p) {
  check_good(curve, p);
  if (p <= kBsgsMinPrime) return ap_naive(curve, p);

  const u64 a = reduce(curve.a(), p);
  const u64 b = reduce(curve.b(), p);
  u64 g = 2;
  while (jacobi(static_cast<i64>(g), p) != -1) ++g;
  const u64 g2 = mulmod(g, g, p);
  const FpCurve E(a, b, p);
  const FpCurve twist(mulmod(a, g2, p), mulmod(b, mulmod(g2, g, p), p), p);

  const u64 width = isqrt(4 * p);  // |a_p| <= floor(2 sqrt p)
  const u64 lo = p + 1 - width;
  const u64 hi = p + 1 + width;

  std::mt19937_64 rng(point_seed(curve, p));
  u64 lcm_curve = 1;
  u64 lcm_twist = 1;
  for (int attempt = 0; attempt < kBsgsAttempts; ++attempt) {
    const bool on_twist = attempt % 2 == 1;
    const FpCurve& group = on_twist ? twist : E;
    const u64 n = group.order(group.random_point(rng), lo, hi);
    (on_twist ? lcm_twist : lcm_curve) = lcm_bounded(on_twist ? lcm_twist : lcm_curve, n);

    // Candidates: #E = k in [lo, hi] with lcm_curve | k and lcm_twist | 2p + 2 - k.
    int found = 0;
    i64 candidate = 0;
    for (u64 k = (lo + lcm_curve - 1) / lcm_curve * lcm_curve; k <= hi; k += lcm_curve) {
      if ((2 * p + 2 - k) % lcm_twist != 0) continue;
      candidate = static_cast<i64>(p + 1) - static_cast<i64>(k);
      if (++found > 1) break;
    }
    if (found == 1) return candidate;
    if (found == 0) {
      throw Error(ErrorKind::Internal, "no admissible group order at p=" + std::to_string(p));
    }
  }
  throw Error(ErrorKind::Internal,
              "group order disambiguation failed at p=" + std::to_string(p));
}

std::vector<ApRecord> trace_range(const Curve& curve, u64 lo, u64 hi,
                                  const TraceOptions& options) {
  std::vector<u64> primes;
  for (u64 p : primes_in_range(lo, hi, options.sieve)) {
    if (p > 3 && !curve.is_bad(p)) primes.push_back(p);
  }
  std::vector<ApRecord> records(primes.size());
  parallel_blocks(primes.size(), 2048, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      const i64 ap = p <= options.naive_threshold ? ap_naive(curve, p) : ap_bsgs(curve, p);
      records[i] = {p, ap};
    }
    if (options.computed) options.computed->fetch_add(end - begin);
  });
  return records;
}

ApTable trace_table(const Curve& curve, u64 x, const TraceOptions& options) {
  return ApTable(curve, x, trace_range(curve, 0, x, options));
}

}  // namespace shafstats
