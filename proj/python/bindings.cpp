#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shafstats/arith.hpp"
#include "shafstats/charsums.hpp"
#include "shafstats/cli.hpp"
#include "shafstats/curve.hpp"
#include "shafstats/error.hpp"
#include "shafstats/frobenius.hpp"
#include "shafstats/sha_stats.hpp"
#include "shafstats/store.hpp"

namespace py = pybind11;
using namespace shafstats;

namespace {

PyObject* g_error_type = nullptr;

py::object big_int(i128 v) {
  const std::string text = to_string(v);
  return py::reinterpret_steal<py::object>(PyLong_FromString(text.c_str(), nullptr, 10));
}

py::dict report_meta(const SumReport& r) {
  py::dict meta;
  for (const auto& [k, v] : r.meta) meta[py::str(k)] = v;
  return meta;
}

TraceOptions trace_options(unsigned threads, u64 naive_threshold) {
  TraceOptions o;
  o.threads = threads;
  o.naive_threshold = naive_threshold;
  return o;
}

}  // namespace

PYBIND11_MODULE(_shafstats, m) {
  m.doc() = "Reduction statistics of an elliptic curve over Q";

  g_error_type = PyErr_NewException("shafstats.ShafstatsError", PyExc_ValueError, nullptr);
  m.add_object("ShafstatsError", py::handle(g_error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (message, kind)
      py::tuple args = py::make_tuple(e.what(), to_string(e.kind()));
      PyErr_SetObject(g_error_type, args.ptr());
    }
  });

  // arith
  m.def("primes_up_to", [](u64 x) {
    const PrimeSeq seq = primes_up_to(x);
    return std::vector<u64>(seq.begin(), seq.end());
  }, py::arg("x"));
  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("factorize", [](u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (const auto& f : factorize(n).factors) out.emplace_back(f.prime, f.exponent);
    return out;
  }, py::arg("n"));
  m.def("squarefree_decompose", [](u64 n) {
    const auto parts = squarefree_decompose(n);
    return std::make_pair(parts.s, parts.r);
  }, py::arg("n"), "Returns (s, r) with n = s^2 r and r squarefree.");
  m.def("is_squarefree", &is_squarefree, py::arg("n"));
  m.def("jacobi", &jacobi, py::arg("k"), py::arg("n"));

  // curve
  py::class_<Curve>(m, "Curve")
      .def(py::init<i64, i64>(), py::arg("a"), py::arg("b"))
      .def_property_readonly("a", &Curve::a)
      .def_property_readonly("b", &Curve::b)
      .def_property_readonly("delta", &Curve::delta)
      .def_property_readonly("bad_primes", &Curve::bad_primes)
      .def("is_bad", &Curve::is_bad, py::arg("p"))
      .def("__eq__", [](const Curve& x, const Curve& y) { return x == y; })
      .def("__repr__", [](const Curve& c) {
        std::ostringstream s;
        s << "Curve(a=" << c.a() << ", b=" << c.b() << ")";
        return s.str();
      });
  m.def("j_invariant", [](const Curve& c) {
    const Rational j = j_invariant(c);
    return py::make_tuple(big_int(j.num), big_int(j.den));
  }, py::arg("curve"), "Returns (numerator, denominator) in lowest terms.");
  m.def("is_cm", &is_cm, py::arg("curve"));
  m.def("ap_naive", &ap_naive, py::arg("curve"), py::arg("p"));
  m.def("ap_bsgs", &ap_bsgs, py::arg("curve"), py::arg("p"));

  py::class_<ApTable>(m, "ApTable")
      .def(py::init([](const Curve& c, u64 xmax, const std::vector<std::pair<u64, i64>>& recs) {
             std::vector<ApRecord> records;
             for (const auto& [p, ap] : recs) records.push_back({p, ap});
             return ApTable(c, xmax, std::move(records));
           }),
           py::arg("curve"), py::arg("xmax"), py::arg("records"))
      .def_property_readonly("curve", &ApTable::curve)
      .def_property_readonly("xmax", &ApTable::xmax)
      .def_property_readonly("records", [](const ApTable& t) {
        std::vector<std::pair<u64, i64>> out;
        out.reserve(t.size());
        for (const auto& r : t.records()) out.emplace_back(r.p, r.ap);
        return out;
      })
      .def("__len__", &ApTable::size)
      .def("__eq__", [](const ApTable& x, const ApTable& y) { return x == y; });

  m.def("trace_table", [](const Curve& c, u64 x, unsigned threads, u64 naive_threshold) {
    py::gil_scoped_release release;
    return trace_table(c, x, trace_options(threads, naive_threshold));
  }, py::arg("curve"), py::arg("x"), py::arg("threads") = 1, py::arg("naive_threshold") = 10000);

  // store
  m.def("save", [](const ApTable& t, const std::string& path) { save(t, path); },
        py::arg("table"), py::arg("path"));
  m.def("load", [](const std::string& path, const Curve& c) { return load(path, c); },
        py::arg("path"), py::arg("curve"));
  m.def("extend", [](const ApTable& t, u64 new_x, unsigned threads) {
    py::gil_scoped_release release;
    return extend(t, new_x, trace_options(threads, 10000));
  }, py::arg("table"), py::arg("new_x"), py::arg("threads") = 1);

  // sha_stats
  py::class_<ShaRecord>(m, "ShaRecord")
      .def_readonly("p", &ShaRecord::p)
      .def_readonly("ap", &ShaRecord::ap)
      .def_readonly("d", &ShaRecord::d)
      .def_readonly("s", &ShaRecord::s)
      .def_readonly("r", &ShaRecord::r)
      .def_readonly("sha", &ShaRecord::sha)
      .def("__repr__", [](const ShaRecord& r) {
        std::ostringstream s;
        s << "ShaRecord(p=" << r.p << ", ap=" << r.ap << ", d=" << r.d << ", s=" << r.s
          << ", r=" << r.r << ", sha=" << r.sha << ")";
        return s.str();
      });
  py::class_<ShaTable>(m, "ShaTable")
      .def_property_readonly("xmax", &ShaTable::xmax)
      .def_property_readonly("records", &ShaTable::records)
      .def("__len__", &ShaTable::size);
  m.def("sha_size", &sha_size, py::arg("p"), py::arg("ap"));
  m.def("build_sha_table", &build_sha_table, py::arg("table"), py::arg("threads") = 1);
  m.def("pi_ts", &pi_ts, py::arg("table"), py::arg("x"));
  m.def("pi_n", &pi_n, py::arg("table"), py::arg("n"), py::arg("x"));
  m.def("d_xy", &d_xy, py::arg("table"), py::arg("x"), py::arg("y"));
  m.def("s_m", &s_m, py::arg("table"), py::arg("m"), py::arg("x"));
  m.def("sha_histogram", &sha_histogram, py::arg("table"), py::arg("x"));

  // frobenius
  py::class_<FrobeniusIndex>(m, "FrobeniusIndex")
      .def_property_readonly("xmax", &FrobeniusIndex::xmax)
      .def_property_readonly("buckets", &FrobeniusIndex::buckets);
  m.def("frobenius_m", &frobenius_m, py::arg("p"), py::arg("ap"));
  m.def("build_index", &build_index, py::arg("table"));
  m.def("pi_K", &pi_K, py::arg("index"), py::arg("m"), py::arg("x"));
  m.def("sigma", &sigma, py::arg("index"), py::arg("x"), py::arg("u"), py::arg("v"));
  m.def("m_set", [](const FrobeniusIndex& idx, u64 x) {
    const MSet s = m_set(idx, x);
    return py::make_tuple(s.members, s.max ? py::cast(*s.max) : py::none());
  }, py::arg("index"), py::arg("x"), "Returns (members, max) with max None when empty.");
  m.def("lang_trotter_fit", [](const FrobeniusIndex& idx, u64 m_, const std::vector<u64>& cps) {
    const FitReport f = lang_trotter_fit(idx, m_, cps);
    py::dict out;
    out["beta"] = f.beta ? py::cast(*f.beta) : py::none();
    out["xs"] = f.xs;
    out["counts"] = f.counts;
    out["fitted"] = f.fitted;
    out["residuals"] = f.residuals;
    return out;
  }, py::arg("index"), py::arg("m"), py::arg("checkpoints"));

  // charsums
  py::class_<SumReport>(m, "SumReport")
      .def_readonly("value", &SumReport::value)
      .def_readonly("main_term", &SumReport::main_term)
      .def_readonly("bound", &SumReport::bound)
      .def_readonly("residual", &SumReport::residual)
      .def_property_readonly("exact", [](const SumReport& r) -> py::object {
        if (!r.exact) return py::none();
        return py::make_tuple(r.exact->numerator, r.exact->denominator);
      })
      .def_property_readonly("meta", &report_meta);
  py::class_<SieveConfig>(m, "SieveConfig")
      .def_readonly("u", &SieveConfig::u)
      .def_readonly("z", &SieveConfig::z)
      .def_readonly("ell_primes", &SieveConfig::ell_primes)
      .def_readonly("z_floor_ok", &SieveConfig::z_floor_ok)
      .def("empty", &SieveConfig::empty);
  m.def("u_sum", &u_sum, py::arg("table"), py::arg("x"), py::arg("n"), py::arg("threads") = 1);
  m.def("lemma1_report", &lemma1_report, py::arg("table"), py::arg("x"), py::arg("l1"),
        py::arg("l2"), py::arg("threads") = 1);
  m.def("burgess_sum", &burgess_sum, py::arg("u"), py::arg("v"), py::arg("s"),
        py::arg("threads") = 1);
  m.def("hb_double_sum", &hb_double_sum, py::arg("X"), py::arg("Y"), py::arg("f"),
        py::arg("threads") = 1);
  m.def("make_sieve_config", &make_sieve_config, py::arg("u"), py::arg("z"),
        py::arg("bad_primes"));
  m.def("square_sieve_rhs", &square_sieve_rhs, py::arg("table"), py::arg("m"), py::arg("x"),
        py::arg("config"), py::arg("threads") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line tool; returns (exit_code, stdout, stderr).");
}
