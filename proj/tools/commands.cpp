#include "commands.hpp"

#include "negamoran/cylinders.hpp"
#include "negamoran/dimension.hpp"
#include "negamoran/moran.hpp"
#include "negamoran/numeral.hpp"
#include "negamoran/salem.hpp"
#include "negamoran/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace negamoran::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  int s = 4;
  int u = 0;
  std::string P = "uniform";
  int precision = 30;
  std::string format = "plain";
  std::uint64_t seed = 1;
  std::uint64_t cap = kDefaultCap;
};

// Raised for failed invariants (exit 1), as opposed to bad input (exit 2).
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

Json exact(const Rational& v, int precision) {
  return Json{{"exact", to_string(v)}, {"decimal", to_decimal(v, precision)}};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_plain(const Json& doc, std::ostream& out, const std::string& indent = "") {
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_plain(value, out, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& row : value) {
        out << indent << " ";
        for (const auto& [k, v] : row.items()) out << ' ' << k << '=' << scalar_text(v);
        out << '\n';
      }
    } else if (value.is_array()) {
      out << indent << key << ':';
      for (const auto& v : value) out << ' ' << scalar_text(v);
      out << '\n';
    } else {
      out << indent << key << ": " << scalar_text(value) << '\n';
    }
  }
}

// Flat CSV of an array of objects (one header row from the first object).
void render_rows_csv(const Json& rows, std::ostream& out) {
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    (void)v;
    out << (first ? "" : ",") << k;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      (void)k;
      std::string cell = scalar_text(v);
      if (cell.find(',') != std::string::npos) cell = '"' + cell + '"';
      out << (first ? "" : ",") << cell;
      first = false;
    }
    out << '\n';
  }
}

void emit(const Globals& g, const Json& doc, const std::string& csv_rows_key, std::ostream& out) {
  if (g.format == "json") {
    out << doc.dump(2) << '\n';
  } else if (g.format == "csv") {
    if (!csv_rows_key.empty() && doc.contains(csv_rows_key)) {
      render_rows_csv(doc.at(csv_rows_key), out);
    } else {
      Json row = Json::object();
      for (const auto& [k, v] : doc.items()) {
        if (v.is_object() && v.contains("exact")) {
          row[k] = v.at("exact");
          row[k + "_decimal"] = v.at("decimal");
        } else if (!v.is_structured()) {
          row[k] = v;
        }
      }
      render_rows_csv(Json::array({row}), out);
    }
  } else {
    render_plain(doc, out);
  }
}

Json params_json(const Globals& g, const ProbVector& P) {
  return Json{{"s", g.s}, {"u", g.u}, {"P", P.to_string()}};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_eval(const Globals& g, const std::string& system, const std::string& text, std::ostream& out) {
  const DigitSeq d = parse_digits(text, g.s);
  Json doc;
  doc["system"] = system;
  doc["digits"] = format_digits(d, g.s);
  if (system == "s") {
    doc["value"] = exact(eval_s_adic(g.s, d), g.precision);
  } else if (system == "negs") {
    doc["value"] = exact(eval_nega_s_adic(g.s, d), g.precision);
  } else {
    const ProbVector P = ProbVector::parse(g.P, g.s);
    doc["P"] = P.to_string();
    if (system == "P") {
      doc["value"] = exact(eval_P(P, d), g.precision);
    } else if (system == "negP") {
      const Rational v = eval_negP(P, d);
      if (v != eval_P(P, complement_even(g.s, d))) throw InvariantFailure("nega-P evaluators disagree");
      doc["value"] = exact(v, g.precision);
    } else if (system == "Ftilde") {
      doc["argument"] = exact(f_tilde_argument(g.s, d), g.precision);
      doc["value"] = exact(eval_F_tilde(P, d), g.precision);
    } else if (system == "Fddot") {
      doc["argument"] = exact(f_ddot_argument(g.s, d), g.precision);
      doc["value"] = exact(eval_F_ddot(P, d), g.precision);
    } else if (system == "fzeta") {
      doc["value"] = exact(eval_f_zeta(P, d), g.precision);
    } else {
      throw std::invalid_argument("unknown system " + system);
    }
  }
  emit(g, doc, "", out);
  return kExitOk;
}

int cmd_convert(const Globals& g, const std::string& to, const std::optional<std::string>& digits,
                const std::optional<std::string>& blocks, const std::optional<std::string>& value, int count,
                std::ostream& out) {
  const SystemParams params(g.s, g.u);
  Json doc;
  doc["to"] = to;
  if (to == "P-digits") {
    if (!value) throw std::invalid_argument("--to P-digits needs --value");
    const ProbVector P = ProbVector::parse(g.P, g.s);
    const Rational x = parse_rational(*value);
    const DigitSeq d = extract_P_digits(P, x, static_cast<std::size_t>(count));
    doc["value"] = exact(x, g.precision);
    doc["result"] = format_digits(d, g.s);
    doc["truncation"] = exact(eval_P(P, d), g.precision);
  } else if (to == "digits") {
    if (!blocks) throw std::invalid_argument("--to digits needs --blocks");
    const DigitSeq b = parse_digits(*blocks, g.s);
    const BlockSeq seq{b.prefix(), b.period()};
    doc["blocks"] = format_blocks(seq, g.s);
    doc["result"] = format_digits(expand_blocks(params, seq), g.s);
  } else {
    if (!digits) throw std::invalid_argument("--to " + to + " needs --digits");
    const DigitSeq d = parse_digits(*digits, g.s);
    doc["digits"] = format_digits(d, g.s);
    if (to == "blocks") {
      const Membership m = check_run_language(params, d);
      doc["accepted"] = m.accepted;
      if (m.accepted) {
        doc["result"] = format_blocks(contract_blocks(params, d), g.s);
      } else {
        doc["index"] = *m.index;
        doc["reason"] = m.reason;
      }
    } else if (to == "complement-even") {
      doc["result"] = format_digits(complement_even(g.s, d), g.s);
    } else if (to == "complement-odd") {
      doc["result"] = format_digits(complement_odd(g.s, d), g.s);
    } else if (to == "canonical") {
      doc["result"] = format_digits(d.canonical(), g.s);
    } else {
      throw std::invalid_argument("unknown conversion target " + to);
    }
  }
  emit(g, doc, "", out);
  return kExitOk;
}

Json interval_json(const Interval& iv, int precision) {
  return Json{{"lo", exact(iv.lo, precision)}, {"hi", exact(iv.hi, precision)},
              {"diameter", exact(iv.length(), precision)}};
}

int cmd_cylinder(const Globals& g, const std::string& spec_text, std::ostream& out) {
  const SystemParams params(g.s, g.u);
  const ProbVector P = ProbVector::parse(g.P, g.s);
  const CylinderSpec spec = parse_cylinder_spec(spec_text);
  Json doc;
  doc["params"] = params_json(g, P);
  doc["system"] = to_string(spec.system);
  doc["base"] = spec.base;
  if (spec.system == CylinderSystem::SNegPu) {
    const RestrictedCylinders geo(params, P);
    const Interval iv = geo.interval(spec.base);
    if (iv != geo.interval_by_blocks(spec.base) || iv != geo.interval_by_extremal_words(spec.base)) {
      throw InvariantFailure("restricted cylinder formula disagrees with its cross-checks");
    }
    doc["interval"] = interval_json(iv, g.precision);
    doc["tau"] = exact(geo.prefix_offset(spec.base), g.precision);
    doc["weight"] = exact(geo.prefix_weight(spec.base), g.precision);
    doc["tail_set"] = to_string(geo.tail_after(spec.base));
    Json children = Json::array();
    for (int c : params.restricted_alphabet()) {
      auto child = spec.base;
      child.push_back(c);
      const Interval civ = geo.interval(child);
      children.push_back({{"digit", c},
                          {"lo", to_decimal(civ.lo, g.precision)},
                          {"hi", to_decimal(civ.hi, g.precision)},
                          {"ratio", to_string(geo.child_ratio(spec.base, c))}});
    }
    doc["children"] = std::move(children);
  } else {
    doc["interval"] = interval_json(cylinder_interval(params, P, spec), g.precision);
  }
  emit(g, doc, "", out);
  return kExitOk;
}

int cmd_cover(const Globals& g, int n, std::ostream& out) {
  const SystemParams params(g.s, g.u);
  const ProbVector P = ProbVector::parse(g.P, g.s);
  const RestrictedCylinders geo(params, P);
  const Cover cover = build_cover(geo, n, g.cap);
  if (g.format == "csv") {
    out << cover_to_csv(cover, g.precision);
  } else if (g.format == "json") {
    out << cover_to_json(cover, g.precision);
  } else {
    out << "rank: " << n << "\ncount: " << cover.cells.size() << "\ntotal_length: " << to_string(cover.total_length)
        << "\n";
    for (const auto& cell : cover.cells) {
      out << format_blocks({cell.base, {}}, g.s) << " [" << to_decimal(cell.interval.lo, g.precision) << ", "
          << to_decimal(cell.interval.hi, g.precision) << "]\n";
    }
  }
  return kExitOk;
}

Json extrema_json(const SetExtrema& e, int s, int precision) {
  Json j{{"lo", exact(e.lo, precision)},
         {"hi", exact(e.hi, precision)},
         {"lo_blocks", format_blocks(e.lo_witness, s)},
         {"hi_blocks", format_blocks(e.hi_witness, s)},
         {"source", e.source}};
  if (e.table_lo_word) {
    j["table_lo_word"] = format_digits(*e.table_lo_word, s);
    j["table_hi_word"] = format_digits(*e.table_hi_word, s);
    j["table_matches"] = e.table_matches();
  }
  return j;
}

int cmd_measure(const Globals& g, int n, std::ostream& out) {
  const SystemParams params(g.s, g.u);
  const ProbVector P = ProbVector::parse(g.P, g.s);
  const RestrictedCylinders geo(params, P);
  const MeasureReport m = measure_sequence(geo, n, g.cap);
  Json doc;
  doc["params"] = params_json(g, P);
  doc["lambda_over"] = exact(m.lambda_over, g.precision);
  doc["lambda_under"] = exact(m.lambda_under, g.precision);
  doc["V"] = exact(m.V, g.precision);
  doc["extrema"] = Json{{"SPu_over", extrema_json(set_extrema(geo.tails(), ExtremaFamily::SPuOver), g.s, g.precision)},
                        {"SPu_under", extrema_json(set_extrema(geo.tails(), ExtremaFamily::SPuUnder), g.s, g.precision)}};
  Json rows = Json::array();
  bool ok = m.V < 1;
  Rational last = std::max(m.lambda_over, m.lambda_under);
  for (const auto& r : m.rows) {
    ok = ok && r.measure < last && r.measure <= r.bound && r.measure == r.weighted_sum;
    last = r.measure;
    rows.push_back({{"n", r.n},
                    {"measure", to_string(r.measure)},
                    {"measure_decimal", to_decimal(r.measure, g.precision)},
                    {"bound", to_string(r.bound)},
                    {"bound_decimal", to_decimal(r.bound, g.precision)}});
  }
  doc["rows"] = std::move(rows);
  doc["invariants_hold"] = ok;
  emit(g, doc, "rows", out);
  return ok ? kExitOk : kExitInvariant;
}

int cmd_dimension(const Globals& g, int k_max, int window, int box_rank, std::ostream& out) {
  const SystemParams params(g.s, g.u);
  const ProbVector P = ProbVector::parse(g.P, g.s);
  const RestrictedCylinders geo(params, P);
  const DimensionTrace tr = dimension_trace(geo, k_max, window, true);
  Json doc;
  doc["params"] = params_json(g, P);
  doc["method"] = "transfer";
  Json rows = Json::array();
  Json alphas = Json::array();
  Json residuals = Json::array();
  for (std::size_t i = 0; i < tr.alphas.size(); ++i) {
    alphas.push_back(num(tr.alphas[i]));
    residuals.push_back(num(tr.residuals[i]));
    rows.push_back({{"k", i + 1},
                    {"alpha_k", num(tr.alphas[i])},
                    {"residual", num(tr.residuals[i])},
                    {"alpha_k_product", num(tr.product_alphas[i].alpha)},
                    {"product_in_unit_interval", tr.product_alphas[i].in_unit_interval}});
  }
  doc["alpha_k"] = std::move(alphas);
  doc["liminf"] = num(tr.liminf_est);
  doc["limsup"] = num(tr.limsup_est);
  doc["residuals"] = std::move(residuals);
  doc["spectral_root"] = num(tr.spectral_root);
  doc["theorem5"] = num(dim_theorem5(params));
  doc["theorem7"] = num(dim_theorem7(params, P));
  doc["hypothesis_flags"] = Json{{"c_lower", num(tr.flags.c_lower)},
                                 {"c_upper", num(tr.flags.c_upper)},
                                 {"branching", tr.flags.branching},
                                 {"c_lower_positive", tr.flags.lower_positive},
                                 {"c_upper_below_one", tr.flags.upper_below_one},
                                 {"bounded_branching", tr.flags.bounded_branching}};
  if (box_rank > 0) {
    const BoxCount bc = boxcount_estimate(build_cover(geo, box_rank, g.cap));
    doc["boxcount"] = Json{{"rank", box_rank}, {"slope", num(bc.slope)}, {"stderr", num(bc.stderr_)},
                           {"scales", bc.scales.size()}, {"warning", bc.warning}};
  }
  doc["trace"] = std::move(rows);
  emit(g, doc, "trace", out);
  return kExitOk;
}

int cmd_verify(const Globals& g, int samples, int max_rank, int k_max, std::ostream& out) {
  VerifyConfig config;
  config.base = g.s;
  config.run_digit = g.u;
  config.P = g.P;
  config.seed = g.seed;
  config.samples = samples;
  config.max_rank = max_rank;
  config.k_max = k_max;
  const VerifyReport report = run_verify(config);
  if (g.format == "json") {
    out << report.to_json();
  } else if (g.format == "csv") {
    out << "module,name,status,detail\n";
    for (const auto& c : report.checks) {
      const char* status = c.informational ? "info" : (c.passed ? "pass" : "fail");
      out << c.module << ",\"" << c.name << "\"," << status << ",\"" << c.detail << "\"\n";
    }
  } else {
    out << "verify s=" << g.s << " u=" << g.u << " P=" << ProbVector::parse(g.P, g.s).to_string()
        << " seed=" << g.seed << "\n";
    out << report.to_text();
  }
  return report.all_passed() ? kExitOk : kExitInvariant;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact nega-P / P-representation sets: cylinders, covers, measures and dimensions", "negamoran"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--s", g.s, "base s (>= 4)")->capture_default_str();
  app.add_option("--u", g.u, "run digit u in [0, s-1]")->capture_default_str();
  app.add_option("--P", g.P, "probability vector: uniform, a comma list, or x,...,x")->capture_default_str();
  app.add_option("--precision", g.precision, "significant digits of decimal output")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--cap", g.cap, "largest cover size to enumerate")->capture_default_str();

  std::function<int()> action;

  auto* eval = app.add_subcommand("eval", "evaluate a digit word");
  std::string system;
  std::string digits_text;
  eval->add_option("--system", system, "s, negs, P, negP, Ftilde, Fddot or fzeta")
      ->required()
      ->check(CLI::IsMember({"s", "negs", "P", "negP", "Ftilde", "Fddot", "fzeta"}));
  eval->add_option("--digits", digits_text, "digit word, e.g. 113(12)")->required();
  eval->callback([&] { action = [&] { return cmd_eval(g, system, digits_text, out); }; });

  auto* convert = app.add_subcommand("convert", "convert between digit words, block words and values");
  std::string to;
  std::optional<std::string> conv_digits;
  std::optional<std::string> conv_blocks;
  std::optional<std::string> conv_value;
  int count = 20;
  convert->add_option("--to", to, "blocks, digits, complement-even, complement-odd, canonical or P-digits")
      ->required()
      ->check(CLI::IsMember({"blocks", "digits", "complement-even", "complement-odd", "canonical", "P-digits"}));
  convert->add_option("--digits", conv_digits, "digit word");
  convert->add_option("--blocks", conv_blocks, "block word, e.g. 13(4)");
  convert->add_option("--value", conv_value, "rational in [0, 1]");
  convert->add_option("--count", count, "number of P-digits")->check(CLI::Range(1, 100000))->capture_default_str();
  convert->callback([&] {
    action = [&] { return cmd_convert(g, to, conv_digits, conv_blocks, conv_value, count, out); };
  });

  auto* cylinder = app.add_subcommand("cylinder", "interval of one cylinder");
  std::string spec;
  cylinder->add_option("--spec", spec, "system:base, e.g. SnegPu:1,3,4")->required();
  cylinder->callback([&] { action = [&] { return cmd_cylinder(g, spec, out); }; });

  auto* cover = app.add_subcommand("cover", "all rank-n cylinders of S(-P,u)");
  int cover_n = 1;
  cover->add_option("--n", cover_n, "rank")->check(CLI::Range(1, 64))->capture_default_str();
  cover->callback([&] { action = [&] { return cmd_cover(g, cover_n, out); }; });

  auto* measure = app.add_subcommand("measure", "Lebesgue measure of the rank-n covers");
  int measure_n = 6;
  measure->add_option("--n", measure_n, "largest rank")->check(CLI::Range(1, 64))->capture_default_str();
  measure->callback([&] { action = [&] { return cmd_measure(g, measure_n, out); }; });

  auto* dimension = app.add_subcommand("dimension", "pre-dimension trace and Moran roots");
  int k_max = 40;
  int window = 10;
  int box_rank = 0;
  dimension->add_option("--k-max", k_max, "largest k")->check(CLI::Range(2, 10000))->capture_default_str();
  dimension->add_option("--window", window, "trailing window for liminf/limsup")->capture_default_str();
  dimension->add_option("--boxcount-rank", box_rank, "cover rank for box counting (0 = skip)")
      ->check(CLI::Range(0, 64))
      ->capture_default_str();
  dimension->callback([&] { action = [&] { return cmd_dimension(g, k_max, window, box_rank, out); }; });

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  int samples = 200;
  int max_rank = 3;
  int verify_k_max = 14;
  verify->add_option("--samples", samples, "random samples per property")->check(CLI::Range(1, 1000000))->capture_default_str();
  verify->add_option("--max-rank", max_rank, "exhaustive cylinder rank")->check(CLI::Range(1, 8))->capture_default_str();
  verify->add_option("--k-max", verify_k_max, "pre-dimension trace length")->check(CLI::Range(12, 1000))->capture_default_str();
  verify->callback([&] { action = [&] { return cmd_verify(g, samples, max_rank, verify_k_max, out); }; });

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const InvariantFailure& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    err << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace negamoran::cli
