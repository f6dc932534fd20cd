#include "shafstats/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "shafstats/charsums.hpp"
#include "shafstats/curve.hpp"
#include "shafstats/error.hpp"
#include "shafstats/frobenius.hpp"
#include "shafstats/report.hpp"
#include "shafstats/sha_stats.hpp"
#include "shafstats/store.hpp"

namespace shafstats {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  i64 a = 0;
  i64 b = 0;
  std::string x;
  unsigned threads = 1;
  std::string cache;
  std::string format = "csv";
  std::string naive_threshold = "10000";
  std::string checkpoints;

  std::vector<double> y;
  std::vector<std::string> m;
  std::string u;
  std::string v;
  std::string s;
  std::string big_x;
  std::string big_y;
  std::string l1 = "5";
  std::string l2 = "7";
  std::string kind = "lemma1";
  double z = 0.0;
  double sieve_u = 0.0;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::SingularCurve:
    case ErrorKind::BadPrime:
    case ErrorKind::OutOfRange:
    case ErrorKind::EmptyWindow:
      return kExitUsage;
    case ErrorKind::Io:
    case ErrorKind::Format:
    case ErrorKind::Checksum:
    case ErrorKind::CurveMismatch:
    case ErrorKind::Version:
      return kExitData;
    case ErrorKind::Capacity:
      return kExitCapacity;
    case ErrorKind::Internal:
      break;
  }
  return kExitFailure;
}

u64 required_count(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing required option ") + flag);
  return parse_count(text);
}

std::vector<u64> parse_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_count(item));
  }
  return out;
}

std::string join_meta(const std::vector<std::pair<std::string, std::string>>& meta) {
  std::string out;
  for (const auto& [k, v] : meta) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

Cell value_cell(const SumReport& r) {
  if (r.exact && r.exact->denominator == 1) return r.exact->numerator;
  return r.value;
}

class Session {
 public:
  Session(const RunConfig& cfg, const CLI::App& sub, std::ostream& err)
      : cfg_(cfg), sub_(sub), err_(err) {}

  Curve curve() const {
    if (sub_.count("--a") == 0 || sub_.count("--b") == 0) {
      throw UsageError("--a and --b are required");
    }
    return Curve(cfg_.a, cfg_.b);
  }

  // Loads, extends or computes the trace table for the requested x.
  ApTable table(u64& x, u64& computed) {
    const Curve c = curve();
    if (is_cm(c)) {
      err_ << "warning: curve a=" << c.a() << " b=" << c.b()
           << " has complex multiplication; statistics assume it does not\n";
    }
    std::atomic<u64> counter{0};
    TraceOptions options;
    options.threads = cfg_.threads;
    options.naive_threshold = parse_count(cfg_.naive_threshold);
    options.computed = &counter;

    std::optional<u64> requested;
    if (!cfg_.x.empty()) requested = parse_count(cfg_.x);

    const auto started = std::chrono::steady_clock::now();
    std::optional<ApTable> result;
    const bool cached = !cfg_.cache.empty() && std::filesystem::exists(cfg_.cache);
    if (cached) {
      result = load(cfg_.cache, c);
      if (!requested) requested = result->xmax();
      if (*requested > result->xmax()) {
        err_ << "extending cache " << cfg_.cache << " from x=" << result->xmax() << " to x="
             << *requested << "\n";
        result = extend(*result, *requested, options);
        save(*result, cfg_.cache);
      }
    } else {
      if (!requested) throw UsageError("missing required option --x");
      err_ << "tracing a_p for p <= " << *requested << " with " << cfg_.threads << " thread(s)\n";
      result = trace_table(c, *requested, options);
      if (!cfg_.cache.empty()) save(*result, cfg_.cache);
    }
    computed = counter.load();
    if (computed > 0) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      err_ << "computed " << computed << " traces in " << format_real(secs) << " s\n";
    }
    x = *requested;
    return std::move(*result);
  }

  std::vector<u64> checkpoints(u64 x) const {
    std::vector<u64> out;
    if (!cfg_.checkpoints.empty()) {
      out = parse_list(cfg_.checkpoints);
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    for (u64 c = 10; c <= x; c *= 10) {
      out.push_back(c);
      if (c > UINT64_MAX / 10) break;
    }
    if (out.empty() || out.back() != x) out.push_back(x);
    return out;
  }

 private:
  const RunConfig& cfg_;
  const CLI::App& sub_;
  std::ostream& err_;
};

Report cmd_trace(Session& session) {
  u64 x = 0, computed = 0;
  const ApTable table = session.table(x, computed);
  Report r{"trace", {"a", "b", "delta", "x", "records", "cm"}, {}};
  const Curve& c = table.curve();
  r.rows.push_back({c.a(), c.b(), c.delta(), x, static_cast<u64>(table.count_up_to(x)), is_cm(c)});
  return r;
}

Report cmd_sha_stats(Session& session, unsigned threads) {
  u64 x = 0, computed = 0;
  const ApTable table = session.table(x, computed);
  const ShaTable sha = build_sha_table(table, threads);
  const PrimeSeq primes = primes_up_to(x);
  const bool irrational_2torsion = rational_two_torsion_roots(table.curve()) < 3;

  Report r{"sha-stats",
           {"x", "pi", "good_count", "pi_ts", "ratio", "sha_max", "top_sha", "tail_count",
            "diag_tail_bound", "irrational_2torsion"},
           {}};
  for (u64 c : session.checkpoints(x)) {
    const auto good = static_cast<u64>(sha.count_up_to(c));
    const auto pi = static_cast<u64>(primes.count_up_to(c));
    const u64 ts = pi_ts(sha, c);
    const auto hist = sha_histogram(sha, c);

    std::vector<std::pair<u64, u64>> by_count(hist.begin(), hist.end());
    std::stable_sort(by_count.begin(), by_count.end(),
                     [](const auto& l, const auto& rr) { return l.second > rr.second; });
    std::string top;
    for (std::size_t i = 0; i < by_count.size() && i < 5; ++i) {
      if (i) top += ';';
      top += std::to_string(by_count[i].first) + ":" + std::to_string(by_count[i].second);
    }
    const double tail_bound = std::pow(static_cast<double>(c), 12.0 / 13.0);
    u64 tail = 0;
    for (const auto& [value, n] : hist) {
      if (static_cast<double>(value) > tail_bound) tail += n;
    }
    const double ratio = pi == 0 ? 0.0 : static_cast<double>(ts) / static_cast<double>(pi);
    r.rows.push_back({c, pi, good, ts, ratio, hist.empty() ? u64{0} : hist.rbegin()->first, top,
                      tail, tail_bound, irrational_2torsion});
  }
  return r;
}

Report cmd_dxy(Session& session, const RunConfig& cfg, unsigned threads) {
  if (cfg.y.empty()) throw UsageError("missing required option --y");
  u64 x = 0, computed = 0;
  const ShaTable sha = build_sha_table(session.table(x, computed), threads);
  Report r{"dxy", {"x", "y", "D", "diag_comparator"}, {}};
  for (double y : cfg.y) {
    const u64 d = d_xy(sha, x, y);
    const double comparator = std::pow(static_cast<double>(x), 13.0 / 7.0) * std::pow(y, -13.0 / 7.0);
    r.rows.push_back({x, y, d, comparator});
  }
  return r;
}

Report cmd_sm(Session& session, const RunConfig& cfg, unsigned threads) {
  if (cfg.m.empty()) throw UsageError("missing required option --m");
  u64 x = 0, computed = 0;
  const ShaTable sha = build_sha_table(session.table(x, computed), threads);
  const FrobeniusIndex index = build_index(sha);
  const auto cps = session.checkpoints(x);
  std::vector<u64> fit_points;
  for (u64 c : cps) {
    if (c >= 2) fit_points.push_back(c);
  }

  Report r{"sm", {"x", "m", "kernel", "s_m", "pi_K_kernel", "diag_lt_beta", "diag_lt_fitted"}, {}};
  for (const auto& text : cfg.m) {
    const u64 m = parse_count(text);
    if (m == 0) throw UsageError("--m values must be >= 1");
    const u64 kernel = squarefree_decompose(m).r;
    const FitReport fit = lang_trotter_fit(index, kernel, fit_points);
    for (u64 c : cps) {
      Cell beta = std::string("undefined");
      Cell fitted = std::string("undefined");
      if (fit.beta && c >= 2) {
        beta = *fit.beta;
        fitted = *fit.beta * std::sqrt(static_cast<double>(c)) / std::log(static_cast<double>(c));
      }
      r.rows.push_back({c, m, kernel, s_m(sha, m, c), pi_K(index, kernel, c), beta, fitted});
    }
  }
  return r;
}

Report cmd_sigma(Session& session, const RunConfig& cfg, unsigned threads) {
  u64 x = 0, computed = 0;
  const ShaTable sha = build_sha_table(session.table(x, computed), threads);
  const FrobeniusIndex index = build_index(sha);
  const u64 u = required_count(cfg.u, "--u");
  const u64 v = required_count(cfg.v, "--v");
  const u64 value = sigma(index, x, u, v);
  const double xd = static_cast<double>(x), vd = static_cast<double>(v);

  Report r{"sigma",
           {"x", "u", "v", "sigma", "pi", "diag_long", "diag_short", "z_long", "z_short"},
           {}};
  r.rows.push_back({x, u, v, value, static_cast<u64>(primes_up_to(x).size()),
                    std::pow(vd * xd, 55.0 / 59.0),
                    std::pow(vd, 13.0 / 14.0) * std::pow(xd, 13.0 / 14.0),
                    suggested_z_long(vd, xd), suggested_z_short(vd, xd)});
  return r;
}

Report cmd_mset(Session& session, unsigned threads) {
  u64 x = 0, computed = 0;
  const ShaTable sha = build_sha_table(session.table(x, computed), threads);
  const FrobeniusIndex index = build_index(sha);
  Report r{"mset", {"x", "size", "max_m", "records", "diag_x_1_13"}, {}};
  for (u64 c : session.checkpoints(x)) {
    const MSet ms = m_set(index, c);
    Cell max_m = std::string("undefined");
    if (ms.max) max_m = *ms.max;
    r.rows.push_back({c, static_cast<u64>(ms.members.size()), max_m,
                      static_cast<u64>(sha.count_up_to(c)),
                      std::pow(static_cast<double>(c), 1.0 / 13.0)});
  }
  return r;
}

Report cmd_charsum(Session& session, const RunConfig& cfg, unsigned threads) {
  Report r{"charsum", {"kind", "value", "main_term", "bound", "residual", "meta"}, {}};
  SumReport s;
  if (cfg.kind == "lemma1") {
    u64 x = 0, computed = 0;
    const ApTable table = session.table(x, computed);
    s = lemma1_report(table, x, parse_count(cfg.l1), parse_count(cfg.l2), threads);
    s.meta.emplace_back("diag_soft_bound", format_real(std::pow(static_cast<double>(x), 0.75)));
  } else if (cfg.kind == "burgess") {
    s = burgess_sum(required_count(cfg.u, "--u"), required_count(cfg.v, "--v"),
                    required_count(cfg.s, "--s"), threads);
  } else if (cfg.kind == "hb") {
    const u64 X = required_count(cfg.big_x, "--X");
    s = hb_double_sum(X, required_count(cfg.big_y, "--Y"), unit_weights(X), threads);
  } else {
    throw UsageError("--kind must be one of lemma1, burgess, hb");
  }
  r.rows.push_back({cfg.kind, value_cell(s), s.main_term, s.bound, s.residual, join_meta(s.meta)});
  return r;
}

Report cmd_sieve(Session& session, const RunConfig& cfg, unsigned threads) {
  if (cfg.m.empty()) throw UsageError("missing required option --m");
  if (cfg.z == 0.0) throw UsageError("missing required option --z");
  u64 x = 0, computed = 0;
  const ApTable table = session.table(x, computed);
  const ShaTable sha = build_sha_table(table, threads);

  std::vector<u64> ms;
  for (const auto& text : cfg.m) ms.push_back(parse_count(text));
  const double u = cfg.sieve_u > 0.0 ? cfg.sieve_u
                                     : static_cast<double>(*std::max_element(ms.begin(), ms.end()));
  const SieveConfig config = make_sieve_config(std::max(u, 1.0), cfg.z, table.curve().bad_primes());

  Report r{"sieve",
           {"x", "m", "z", "L", "z_floor_ok", "numerator", "denominator", "value", "s_m",
            "ratio"},
           {}};
  for (u64 m : ms) {
    const SumReport s = square_sieve_rhs(sha, m, x, config, threads);
    const double sm = s.main_term;
    r.rows.push_back({x, m, cfg.z, static_cast<u64>(config.ell_primes.size()), config.z_floor_ok,
                      s.exact->numerator, s.exact->denominator, s.value,
                      static_cast<u64>(sm),
                      sm > 0 ? Cell{s.value / sm} : Cell{std::string("inf")}});
  }
  return r;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--a", cfg.a, "curve coefficient a in y^2 = x^3 + a x + b");
  sub->add_option("--b", cfg.b, "curve coefficient b");
  sub->add_option("--x", cfg.x, "bound on p (accepts 10^6 or 1e6)");
  sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::Range(1U, 1024U));
  sub->add_option("--cache", cfg.cache, "trace cache file");
  sub->add_option("--format", cfg.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--naive-threshold", cfg.naive_threshold,
                  "largest p counted by the character sum");
  sub->add_option("--checkpoints", cfg.checkpoints, "comma-separated list of x values");
}

}  // namespace

u64 parse_count(const std::string& text) {
  auto fail = [&]() -> u64 {
    throw Error(ErrorKind::InvalidArgument, "not a non-negative integer: '" + text + "'");
  };
  auto parse_u64 = [&](std::string_view s) {
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) fail();
    return v;
  };
  auto power = [&](u64 base, u64 exp) {
    u64 v = 1;
    for (u64 i = 0; i < exp; ++i) {
      if (base != 0 && v > UINT64_MAX / base) fail();
      v *= base;
    }
    return v;
  };
  const std::string_view s = text;
  if (const auto caret = s.find('^'); caret != std::string_view::npos) {
    return power(parse_u64(s.substr(0, caret)), parse_u64(s.substr(caret + 1)));
  }
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    const u64 mant = parse_u64(s.substr(0, e));
    const u64 scale = power(10, parse_u64(s.substr(e + 1)));
    if (mant != 0 && scale > UINT64_MAX / mant) fail();
    return mant * scale;
  }
  return parse_u64(s);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Reduction statistics of an elliptic curve over Q", "shafstats"};
  app.require_subcommand(1);

  auto* trace = app.add_subcommand("trace", "compute and cache Frobenius traces");
  auto* sha = app.add_subcommand("sha-stats", "trivial-Sha counts and Sha size histogram");
  auto* dxy = app.add_subcommand("dxy", "D(x, y) = sum of pi_n(x) over y <= n <= 2 sqrt(x)");
  auto* sm = app.add_subcommand("sm", "S_m(x) and Frobenius field counts");
  auto* sig = app.add_subcommand("sigma", "sigma(x; u, v) over squarefree m in [u - v, u]");
  auto* mset = app.add_subcommand("mset", "the set of m with Pi(K_m, x) > 0");
  auto* charsum = app.add_subcommand("charsum", "Jacobi symbol sums");
  auto* sieve = app.add_subcommand("sieve", "square sieve estimator for S_m(x)");
  for (auto* sub : {trace, sha, dxy, sm, sig, mset, charsum, sieve}) add_common(sub, cfg);

  dxy->add_option("--y", cfg.y, "comma-separated y values")->delimiter(',');
  sm->add_option("--m", cfg.m, "comma-separated m values")->delimiter(',');
  sig->add_option("--u", cfg.u, "upper end of the m window");
  sig->add_option("--v", cfg.v, "window length");
  mset->footer("Rows are emitted per checkpoint.");
  charsum->add_option("--kind", cfg.kind, "lemma1, burgess or hb")
      ->check(CLI::IsMember({"lemma1", "burgess", "hb"}));
  charsum->add_option("--l1", cfg.l1, "first prime > 3 (lemma1)");
  charsum->add_option("--l2", cfg.l2, "second prime > 3 (lemma1)");
  charsum->add_option("--u", cfg.u, "window end (burgess)");
  charsum->add_option("--v", cfg.v, "window length (burgess)");
  charsum->add_option("--s", cfg.s, "odd squarefree modulus (burgess)");
  charsum->add_option("--X", cfg.big_x, "bound on m (hb)");
  charsum->add_option("--Y", cfg.big_y, "bound on s (hb)");
  sieve->add_option("--m", cfg.m, "comma-separated m values")->delimiter(',');
  sieve->add_option("--z", cfg.z, "window start; primes in [z, 2z] are used");
  sieve->add_option("--u", cfg.sieve_u, "u for the z >= (log u)^2 check (default: max m)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    Session session(cfg, *sub, err);
    const unsigned threads = cfg.threads;
    Report report;
    if (sub == trace) report = cmd_trace(session);
    else if (sub == sha) report = cmd_sha_stats(session, threads);
    else if (sub == dxy) report = cmd_dxy(session, cfg, threads);
    else if (sub == sm) report = cmd_sm(session, cfg, threads);
    else if (sub == sig) report = cmd_sigma(session, cfg, threads);
    else if (sub == mset) report = cmd_mset(session, threads);
    else if (sub == charsum) report = cmd_charsum(session, cfg, threads);
    else report = cmd_sieve(session, cfg, threads);
    out << (cfg.format == "json" ? render_json(report) : render_csv(report));
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace shafstats
