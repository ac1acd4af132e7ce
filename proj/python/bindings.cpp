// Python bindings. Exact values cross the boundary as "num/den" strings; the
// package wrapper turns them into fractions.Fraction.
#include "negamoran/cylinders.hpp"
#include "negamoran/dimension.hpp"
#include "negamoran/moran.hpp"
#include "negamoran/numeral.hpp"
#include "negamoran/salem.hpp"
#include "negamoran/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace negamoran;

namespace {

std::string eval_word(const std::string& system, const std::string& digits, int s, const std::string& P) {
  const DigitSeq d = parse_digits(digits, s);
  if (system == "s") return to_string(eval_s_adic(s, d));
  if (system == "negs") return to_string(eval_nega_s_adic(s, d));
  const ProbVector pv = ProbVector::parse(P, s);
  if (system == "P") return to_string(eval_P(pv, d));
  if (system == "negP") return to_string(eval_negP(pv, d));
  if (system == "Ftilde") return to_string(eval_F_tilde(pv, d));
  if (system == "Fddot") return to_string(eval_F_ddot(pv, d));
  if (system == "fzeta") return to_string(eval_f_zeta(pv, d));
  throw std::invalid_argument("unknown system '" + system + "'");
}

std::tuple<std::string, std::string> cylinder(const std::string& spec, int s, int u, const std::string& P) {
  const Interval iv = cylinder_interval(SystemParams(s, u), ProbVector::parse(P, s), parse_cylinder_spec(spec));
  return {to_string(iv.lo), to_string(iv.hi)};
}

std::vector<std::tuple<std::vector<int>, std::string, std::string>> cover(int n, int s, int u, const std::string& P,
                                                                        std::uint64_t cap) {
  const RestrictedCylinders g(SystemParams(s, u), ProbVector::parse(P, s));
  Cover c;
  {
    py::gil_scoped_release release;
    c = build_cover(g, n, cap);
  }
  std::vector<std::tuple<std::vector<int>, std::string, std::string>> out;
  out.reserve(c.cells.size());
  for (const CoverCell& cell : c.cells) out.emplace_back(cell.base, to_string(cell.interval.lo), to_string(cell.interval.hi));
  return out;
}

py::dict measure(int n, int s, int u, const std::string& P, std::uint64_t cap) {
  const RestrictedCylinders g(SystemParams(s, u), ProbVector::parse(P, s));
  const MeasureReport r = measure_sequence(g, n, cap);
  py::dict d;
  d["lambda_over"] = to_string(r.lambda_over);
  d["lambda_under"] = to_string(r.lambda_under);
  d["V"] = to_string(r.V);
  py::list rows;
  for (const MeasureRow& row : r.rows) {
    py::dict x;
    x["n"] = row.n;
    x["measure"] = to_string(row.measure);
    x["bound"] = to_string(row.bound);
    rows.append(x);
  }
  d["rows"] = rows;
  return d;
}

py::dict extrema(const std::string& family, int s, int u, const std::string& P) {
  const SetExtrema e = set_extrema(TailSets(SystemParams(s, u), ProbVector::parse(P, s)), parse_extrema_family(family));
  py::dict d;
  d["lo"] = to_string(e.lo);
  d["hi"] = to_string(e.hi);
  d["source"] = e.source;
  d["table_matches"] = e.table_matches();
  return d;
}

py::dict dimension(int s, int u, const std::string& P, int k_max, int window) {
  const SystemParams params(s, u);
  const ProbVector pv = ProbVector::parse(P, s);
  const DimensionTrace t = dimension_trace(RestrictedCylinders(params, pv), k_max, window, false);
  py::dict d;
  d["alphas"] = t.alphas;
  d["liminf"] = t.liminf_est;
  d["limsup"] = t.limsup_est;
  d["spectral_root"] = t.spectral_root;
  d["theorem5"] = dim_theorem5(params);
  d["theorem7"] = dim_theorem7(params, pv);
  return d;
}

std::tuple<bool, std::string> verify(int s, int u, const std::string& P, std::uint64_t seed, int samples) {
  VerifyConfig config;
  config.base = s;
  config.run_digit = u;
  config.P = P;
  config.seed = seed;
  config.samples = samples;
  py::gil_scoped_release release;
  const VerifyReport r = run_verify(config);
  return {r.all_passed(), r.to_text()};
}

}  // namespace

PYBIND11_MODULE(_negamoran, m) {
  m.doc() = "Exact nega-P numeral systems, restricted cylinders and Moran-set dimensions";

  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_ValueError);

  m.def("eval_word", &eval_word, py::arg("system"), py::arg("digits"), py::arg("s"), py::arg("P") = "uniform");
  m.def(
      "complement_even", [](const std::string& digits, int s) { return format_digits(complement_even(s, parse_digits(digits, s)), s); },
      py::arg("digits"), py::arg("s"));
  m.def(
      "expand_blocks",
      [](std::vector<int> prefix, std::vector<int> period, int s, int u) {
        return format_digits(expand_blocks(SystemParams(s, u), BlockSeq{std::move(prefix), std::move(period)}), s);
      },
      py::arg("prefix"), py::arg("period"), py::arg("s"), py::arg("u"));
  m.def(
      "contract_blocks",
      [](const std::string& digits, int s, int u) {
        const BlockSeq b = contract_blocks(SystemParams(s, u), parse_digits(digits, s));
        return std::make_tuple(b.prefix, b.period);
      },
      py::arg("digits"), py::arg("s"), py::arg("u"));
  m.def("cylinder", &cylinder, py::arg("spec"), py::arg("s"), py::arg("u") = 0, py::arg("P") = "uniform");
  m.def("cover", &cover, py::arg("n"), py::arg("s"), py::arg("u"), py::arg("P") = "uniform",
        py::arg("cap") = kDefaultCap);
  m.def("measure", &measure, py::arg("n"), py::arg("s"), py::arg("u"), py::arg("P") = "uniform",
        py::arg("cap") = kDefaultCap);
  m.def("extrema", &extrema, py::arg("family"), py::arg("s"), py::arg("u"), py::arg("P") = "uniform");
  m.def("solve_moran", &solve_moran_eq2, py::arg("ratios"));
  m.def("dimension", &dimension, py::arg("s"), py::arg("u"), py::arg("P") = "uniform", py::arg("k_max") = 40,
        py::arg("window") = 10);
  m.def("verify", &verify, py::arg("s") = 6, py::arg("u") = 2, py::arg("P") = "uniform", py::arg("seed") = 1,
        py::arg("samples") = 200);
}
