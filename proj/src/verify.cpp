#include "negamoran/verify.hpp"

#include "negamoran/dimension.hpp"
#include "negamoran/moran.hpp"
#include "negamoran/numeral.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace negamoran {

int draw(Rng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(rng() % span);
}

DigitSeq random_digit_word(Rng& rng, int base, int max_prefix, int max_period) {
  std::vector<int> prefix(static_cast<std::size_t>(draw(rng, 0, max_prefix)));
  for (int& d : prefix) d = draw(rng, 0, base - 1);
  std::vector<int> period(static_cast<std::size_t>(draw(rng, 0, max_period)));
  for (int& d : period) d = draw(rng, 0, base - 1);
  return DigitSeq(std::move(prefix), std::move(period));
}

DigitSeq random_terminating_word(Rng& rng, int base, int max_length) {
  std::vector<int> digits(static_cast<std::size_t>(draw(rng, 1, max_length)));
  for (int& d : digits) d = draw(rng, 0, base - 1);
  return DigitSeq(std::move(digits)).canonical();
}

BlockSeq random_block_word(Rng& rng, const SystemParams& params, int max_prefix, int max_period) {
  const auto& alphabet = params.restricted_alphabet();
  const int top = static_cast<int>(alphabet.size()) - 1;
  BlockSeq w;
  w.prefix.resize(static_cast<std::size_t>(draw(rng, 0, max_prefix)));
  for (int& c : w.prefix) c = alphabet[static_cast<std::size_t>(draw(rng, 0, top))];
  w.period.resize(static_cast<std::size_t>(draw(rng, 1, std::max(1, max_period))));
  for (int& c : w.period) c = alphabet[static_cast<std::size_t>(draw(rng, 0, top))];
  return w;
}

ProbVector random_prob_vector(Rng& rng, int base) {
  std::vector<int> weights(static_cast<std::size_t>(base));
  int total = 0;
  for (int& w : weights) {
    w = draw(rng, 1, 9);
    total += w;
  }
  std::vector<Rational> p;
  for (int w : weights) {
    Rational x(w, total);
    x.canonicalize();
    p.push_back(x);
  }
  return ProbVector(std::move(p));
}

std::pair<DigitSeq, DigitSeq> dual_pair_P(int base, const std::vector<int>& prefix, int c) {
  if (c < 1 || c >= base) throw std::invalid_argument("dual pair digit must lie in 1..s-1");
  std::vector<int> a = prefix;
  a.push_back(c);
  std::vector<int> b = prefix;
  b.push_back(c - 1);
  return {DigitSeq(a), DigitSeq(b, {base - 1})};
}

std::pair<DigitSeq, DigitSeq> dual_pair_negP(int base, const std::vector<int>& prefix, int c) {
  auto [a, b] = dual_pair_P(base, prefix, c);
  return {complement_even(base, a), complement_even(base, b)};
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.informational; });
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  int passed = 0;
  int failed = 0;
  int notes = 0;
  for (const auto& c : checks) {
    const char* tag = c.informational ? (c.passed ? "[INFO]" : "[NOTE]") : (c.passed ? "[PASS]" : "[FAIL]");
    out << tag << ' ' << c.module << ": " << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << '\n';
    if (c.informational) {
      ++notes;
    } else if (c.passed) {
      ++passed;
    } else {
      ++failed;
    }
  }
  out << "summary: " << passed << " passed, " << failed << " failed, " << notes << " informational\n";
  return out.str();
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    arr.push_back({{"module", c.module},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"informational", c.informational},
                   {"detail", c.detail}});
  }
  doc["checks"] = std::move(arr);
  doc["all_passed"] = all_passed();
  return doc.dump(2) + "\n";
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class Suite {
 public:
  explicit Suite(VerifyReport& report) : report_(report) {}

  void add(const std::string& module, const std::string& name, bool passed, std::string detail = {}) {
    report_.checks.push_back({module, name, passed, false, std::move(detail)});
  }
  void note(const std::string& module, const std::string& name, bool passed, std::string detail) {
    report_.checks.push_back({module, name, passed, true, std::move(detail)});
  }
  // Runs `body`; an exception counts as a failure with its message.
  void guarded(const std::string& module, const std::string& name, const std::function<std::string(bool&)>& body) {
    bool ok = true;
    std::string detail;
    try {
      detail = body(ok);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    add(module, name, ok, detail);
  }

 private:
  VerifyReport& report_;
};

std::vector<std::vector<int>> all_bases(const std::vector<int>& alphabet, int rank) {
  std::vector<std::vector<int>> bases{{}};
  for (int r = 0; r < rank; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& b : bases) {
      for (int c : alphabet) {
        auto x = b;
        x.push_back(c);
        next.push_back(std::move(x));
      }
    }
    bases = std::move(next);
  }
  return bases;
}

std::vector<int> digits_upto(int base) {
  std::vector<int> v;
  for (int d = 0; d < base; ++d) v.push_back(d);
  return v;
}

void core_digit_checks(Suite& suite, const SystemParams& params, Rng& rng, int samples) {
  const int s = params.base();
  const int u = params.run_digit();
  const std::string mod = "core-digits";

  suite.guarded(mod, "expand/contract round trip and acceptance", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const BlockSeq b = random_block_word(rng, params, 4, 3);
      const DigitSeq d = expand_blocks(params, b);
      ok = contract_blocks(params, d) == b.canonical() && check_run_language(params, d).accepted;
    }
    return std::to_string(samples) + " block words";
  });

  suite.guarded(mod, "u at a block terminal is rejected", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      BlockSeq b = random_block_word(rng, params, 4, 2);
      b.prefix.push_back(params.restricted_alphabet().front());
      const DigitSeq d = expand_blocks(params, b);
      // Replace the terminal digit of the last prefix block by u.
      std::size_t terminal = 0;
      for (int c : b.prefix) terminal += static_cast<std::size_t>(c);
      std::vector<int> digits;
      for (std::size_t pos = 1; pos <= terminal; ++pos) digits.push_back(d.at(pos));
      digits.back() = u;
      const DigitSeq bad(digits, expand_blocks(params, {{}, b.period}).period());
      ok = !check_run_language(params, bad).accepted;
    }
    return std::string("terminal replaced by ") + std::to_string(u);
  });

  suite.guarded(mod, "u-runs of length s-1 are rejected", [&](bool& ok) {
    std::vector<int> digits(static_cast<std::size_t>(s - 1), u);
    digits.push_back(s - 1);
    const Membership m = check_run_language(params, DigitSeq(digits, {s - 1 == u ? 1 : s - 1}));
    ok = !m.accepted && m.index.has_value();
    return m.reason;
  });

  suite.guarded(mod, "canonical form keeps the word", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 5, 4);
      const DigitSeq c = d.canonical();
      ok = c.canonical() == c;
      for (std::size_t pos = 1; pos <= 40 && ok; ++pos) ok = c.at(pos) == d.at(pos);
      ok = ok && parse_digits(format_digits(d, s), s).canonical() == c;
    }
    return std::to_string(samples) + " words, 40 positions each, text round trip";
  });

  suite.guarded("moran", "digit_membership agrees with contract_blocks", [&](bool& ok) {
    int accepted = 0;
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = i % 2 ? expand_blocks(params, random_block_word(rng, params, 3, 2))
                               : random_digit_word(rng, s, 4, 3);
      const Membership m = digit_membership(params, d);
      bool contracts = true;
      try {
        contract_blocks(params, d);
      } catch (const LanguageError&) {
        contracts = false;
      }
      ok = m.accepted == contracts;
      accepted += m.accepted ? 1 : 0;
    }
    return std::to_string(accepted) + "/" + std::to_string(samples) + " accepted";
  });
}

void numeral_checks(Suite& suite, int s, Rng& rng, int samples) {
  const std::string mod = "numeral";
  suite.guarded(mod, "nega-s-adic = 1/(s+1) - s-adic(even complement)", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const auto [a, b] = nega_identity_check(s, random_digit_word(rng, s, 6, 5));
      ok = a == b;
    }
    return std::to_string(samples) + " words";
  });
  suite.guarded(mod, "nega-s-adic = s-adic(odd complement) - s/(s+1)", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 6, 5);
      ok = eval_nega_s_adic(s, d) == nega_via_shifted_complement(s, d);
    }
    return std::to_string(samples) + " words";
  });
  suite.guarded(mod, "value ranges", [&](bool& ok) {
    ok = eval_s_adic(s, DigitSeq({}, {s - 1})) == 1;
    const Rational lo(-s, s + 1);
    const Rational hi(1, s + 1);
    for (int i = 0; i < samples && ok; ++i) {
      const Rational v = eval_nega_s_adic(s, random_digit_word(rng, s, 6, 5));
      ok = lo <= v && v <= hi;
    }
    return "s-adic (s-1)^inf = 1; nega values in [-s/(s+1), 1/(s+1)]";
  });
  suite.guarded(mod, "s-adic monotone in lexicographic order", [&](bool& ok) {
    std::vector<std::vector<int>> words;
    for (int i = 0; i < samples; ++i) {
      std::vector<int> w(8);
      for (int& d : w) d = draw(rng, 0, s - 1);
      words.push_back(w);
    }
    std::sort(words.begin(), words.end());
    for (std::size_t i = 1; i < words.size() && ok; ++i) {
      ok = eval_s_adic(s, DigitSeq(words[i - 1])) <= eval_s_adic(s, DigitSeq(words[i]));
    }
    return std::to_string(samples) + " sorted words of length 8";
  });
}

void salem_checks(Suite& suite, const ProbVector& P, Rng& rng, int samples) {
  const int s = P.size();
  const std::string mod = "salem";
  suite.guarded(mod, "beta table", [&](bool& ok) {
    ok = P.beta(0) == 0 && P.beta(s - 1) + P.p(s - 1) == 1;
    for (int k = 0; k + 1 < s && ok; ++k) ok = P.beta(k) + P.p(k) == P.beta(k + 1) && P.p(k) > 0;
    for (int d = 0; d < s && ok; ++d) {
      for (std::size_t n = 1; n <= 4 && ok; ++n) {
        ok = P.p_tilde(d, n) == P.p_ddot(d, n + 1) && P.delta_tilde(d, n) >= 0 && P.delta_tilde(d, n) <= 1;
      }
      ok = ok && P.delta_tilde(0, 1) == 0;
    }
    return "";
  });
  suite.guarded(mod, "nega-P closed form = P of even complement", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 6, 5);
      ok = eval_negP(P, d) == eval_P(P, complement_even(s, d)) && eval_negP(P, d) == eval_negP_via_complement(P, d);
    }
    return std::to_string(samples) + " words";
  });
  suite.guarded(mod, "nega-P series within the tail bound", [&](bool& ok) {
    const int n = std::max(10, samples / 4);
    for (int i = 0; i < n && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 6, 5);
      const Rational gap = eval_negP(P, d) - eval_negP_partial_sum(P, d, 60);
      ok = abs(gap) <= negP_tail_bound(P, d, 60);
    }
    return std::to_string(n) + " words, 60 terms";
  });
  suite.guarded(mod, "P series within the tail bound", [&](bool& ok) {
    const int n = std::max(10, samples / 4);
    for (int i = 0; i < n && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 6, 5);
      Rational bound = 1;
      for (std::size_t k = 1; k <= 60; ++k) bound *= P.p(d.at(k));
      const Rational gap = eval_P(P, d) - eval_P_partial_sum(P, d, 60);
      ok = gap >= 0 && gap <= bound;
    }
    return std::to_string(n) + " words, 60 terms";
  });

  auto monotone = [&](const std::function<Rational(const DigitSeq&)>& f,
                      const std::function<Rational(const DigitSeq&)>& arg, bool& ok) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int i = 0; i < samples * 5; ++i) {
      const DigitSeq d = random_terminating_word(rng, s, 8);
      pts.emplace_back(arg(d), f(d));
    }
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size() && ok; ++i) {
      ok = pts[i - 1].first == pts[i].first ? pts[i - 1].second == pts[i].second
                                            : pts[i - 1].second < pts[i].second;
    }
    return std::to_string(samples * 5) + " terminating words";
  };
  suite.guarded(mod, "F-tilde strictly increasing in its argument", [&](bool& ok) {
    return monotone([&](const DigitSeq& d) { return eval_F_tilde(P, d); },
                    [&](const DigitSeq& d) { return f_tilde_argument(s, d); }, ok);
  });
  suite.guarded(mod, "F-ddot strictly increasing in its argument", [&](bool& ok) {
    return monotone([&](const DigitSeq& d) { return eval_F_ddot(P, d); },
                    [&](const DigitSeq& d) { return f_ddot_argument(s, d); }, ok);
  });
  suite.guarded(mod, "F-ddot parity shift: F-tilde(0 d) = p0 F-ddot(d)", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 5, 4);
      std::vector<int> prefix{0};
      prefix.insert(prefix.end(), d.prefix().begin(), d.prefix().end());
      ok = eval_F_tilde(P, DigitSeq(prefix, d.period())) == P.p(0) * eval_F_ddot(P, d);
    }
    return std::to_string(samples) + " words";
  });
  suite.guarded(mod, "f_zeta = P-representation; uniform P = s-adic", [&](bool& ok) {
    const ProbVector U = ProbVector::uniform(s);
    for (int i = 0; i < samples && ok; ++i) {
      const DigitSeq d = random_digit_word(rng, s, 5, 4);
      ok = eval_f_zeta(P, d) == eval_P(P, d) && eval_P(U, d) == eval_s_adic(s, d) && eval_f_zeta(U, d) == eval_s_adic(s, d);
    }
    return std::to_string(samples) + " words";
  });
  suite.guarded(mod, "dual representations agree", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      std::vector<int> prefix(static_cast<std::size_t>(draw(rng, 0, 5)));
      for (int& d : prefix) d = draw(rng, 0, s - 1);
      const int c = draw(rng, 1, s - 1);
      const auto [a, b] = dual_pair_P(s, prefix, c);
      const auto [na, nb] = dual_pair_negP(s, prefix, c);
      ok = eval_P(P, a) == eval_P(P, b) && eval_f_zeta(P, a) == eval_f_zeta(P, b) &&
           eval_negP(P, na) == eval_negP(P, nb) && eval_F_tilde(P, na) == eval_F_tilde(P, nb) &&
           eval_F_ddot(P, complement_odd(s, a)) == eval_F_ddot(P, complement_odd(s, b));
    }
    return std::to_string(samples) + " pairs (P, nega-P, odd-complement)";
  });
  suite.guarded(mod, "P-digit extraction round trip", [&](bool& ok) {
    for (int i = 0; i < samples && ok; ++i) {
      const int den = draw(rng, 1, 997);
      Rational x(draw(rng, 0, den), den);
      x.canonicalize();
      const DigitSeq d = extract_P_digits(P, x, 30);
      Rational w = 1;
      for (int digit : d.prefix()) w *= P.p(digit);
      const Rational gap = x - eval_P(P, d);
      ok = gap >= 0 && gap <= w;
    }
    return std::to_string(samples) + " rationals, 30 digits";
  });
}

void cylinder_checks(Suite& suite, const SystemParams& params, const ProbVector& P, const RestrictedCylinders& geo,
                     int max_rank) {
  const int s = params.base();
  const std::string mod = "cylinders";
  suite.guarded(mod, "P and nega-P cylinders: diameters, adjacency, tiling", [&](bool& ok) {
    int count = 0;
    for (int rank = 0; rank <= 2 && ok; ++rank) {
      for (const auto& base : all_bases(digits_upto(s), rank)) {
        Rational prod = 1;
        for (int d : base) prod *= P.p(d);
        ok = ok && cyl_interval_P(P, base).length() == prod &&
             cyl_interval_negP(P, base).length() == negP_diameter_product(P, base) &&
             children_tile_parent(P, CylinderSystem::P, base) && children_tile_parent(P, CylinderSystem::NegP, base);
        for (int c = 0; c + 1 < s && ok; ++c) ok = adjacency_check_P(P, base, c) && adjacency_check_negP(P, base, c);
        ++count;
      }
    }
    return std::to_string(count) + " bases up to rank 2";
  });
  const auto& alphabet = params.restricted_alphabet();
  suite.guarded(mod, "restricted cylinder formula = block maps = extremal words", [&](bool& ok) {
    int count = 0;
    for (int rank = 0; rank <= max_rank && ok; ++rank) {
      for (const auto& base : all_bases(alphabet, rank)) {
        const Interval a = geo.interval(base);
        ok = ok && a == geo.interval_by_blocks(base) && a == geo.interval_by_extremal_words(base) &&
             a.length() == geo.diameter(base);
        ++count;
      }
    }
    return std::to_string(count) + " bases up to rank " + std::to_string(max_rank);
  });
  suite.guarded(mod, "child ratio: quotient = closed form; nesting", [&](bool& ok) {
    int count = 0;
    for (int rank = 0; rank < max_rank && ok; ++rank) {
      for (const auto& base : all_bases(alphabet, rank)) {
        int sum = 0;
        for (int c : base) sum += c;
        const Interval parent = geo.interval(base);
        for (int c : alphabet) {
          auto child = base;
          child.push_back(c);
          const Rational q = geo.child_ratio(base, c);
          ok = ok && q == geo.child_ratio_closed_form(sum % 2 ? Parity::Odd : Parity::Even, c) &&
               q * geo.diameter(base) == geo.diameter(child) && parent.contains(geo.interval(child));
          ++count;
        }
      }
    }
    return std::to_string(count) + " parent/child pairs";
  });
  suite.guarded(mod, "sibling separation orientation and gaps", [&](bool& ok) {
    int count = 0;
    for (int rank = 0; rank <= 1 && ok; ++rank) {
      for (const auto& base : all_bases(alphabet, rank)) {
        for (int c : alphabet) {
          if (!params.admissible(c + 1)) continue;
          ok = ok && separation_check(geo, base, c).holds();
          ++count;
        }
      }
    }
    return std::to_string(count) + " sibling pairs";
  });
}

void moran_checks(Suite& suite, const SystemParams& params, const ProbVector& P, const RestrictedCylinders& geo,
                  int max_rank) {
  const int s = params.base();
  const std::string mod = "moran";
  const int cover_rank = std::max(2, max_rank);
  suite.guarded(mod, "covers: size, disjointness, nesting", [&](bool& ok) {
    std::map<std::vector<int>, Interval> previous;
    for (int n = 1; n <= cover_rank && ok; ++n) {
      const Cover cover = build_cover(geo, n);
      ok = cover.cells.size() == cover_size(params, n);
      std::map<std::vector<int>, Interval> current;
      for (const auto& cell : cover.cells) {
        if (n > 1) {
          auto parent = cell.base;
          parent.pop_back();
          ok = ok && previous.at(parent).contains(cell.interval);
        }
        current.emplace(cell.base, cell.interval);
      }
      previous = std::move(current);
    }
    return "ranks 1.." + std::to_string(cover_rank);
  });
  suite.guarded(mod, "measure decreasing and dominated by the geometric bound", [&](bool& ok) {
    const int n_max = std::min(6, cover_rank + 2);
    const MeasureReport m = measure_sequence(geo, n_max);
    ok = m.V < 1 && m.v_even < 1 && m.v_odd < 1;
    Rational last = std::max(m.lambda_over, m.lambda_under);
    for (const auto& row : m.rows) {
      ok = ok && row.measure < last && row.measure <= row.bound && row.measure == row.weighted_sum;
      last = row.measure;
    }
    return "n = 1.." + std::to_string(n_max) + ", V = " + to_decimal(m.V, 12);
  });
  suite.guarded(mod, "set extrema = outer endpoints of the rank-1 cover", [&](bool& ok) {
    const Cover cover = build_cover(geo, 1);
    const SetExtrema e = set_extrema(geo.tails(), ExtremaFamily::SNegPu);
    ok = e.lo == cover.cells.front().interval.lo && e.hi == cover.cells.back().interval.hi;
    const SetExtrema plain = set_extrema(geo.tails(), ExtremaFamily::SPu);
    ok = ok && eval_P(P, expand_blocks(params, plain.lo_witness)) == plain.lo &&
         eval_P(P, expand_blocks(params, plain.hi_witness)) == plain.hi;
    const SetExtrema nega = set_extrema(geo.tails(), ExtremaFamily::SNegSu);
    ok = ok && eval_nega_s_adic(s, expand_blocks(params, nega.lo_witness)) == nega.lo &&
         eval_nega_s_adic(s, expand_blocks(params, nega.hi_witness)) == nega.hi;
    return "[" + to_decimal(e.lo, 12) + ", " + to_decimal(e.hi, 12) + "]";
  });
  for (auto family : {ExtremaFamily::SPuOver, ExtremaFamily::SPuUnder, ExtremaFamily::SNegSu}) {
    const SetExtrema e = set_extrema(geo.tails(), family);
    std::string detail = e.source + ": ";
    if (e.table_matches()) {
      detail += "tabulated words match the solver";
    } else {
      detail += "tabulated " + format_digits(*e.table_lo_word, s) + " / " + format_digits(*e.table_hi_word, s) +
                " differ from solver witnesses " + format_blocks(e.lo_witness, s) + " / " +
                format_blocks(e.hi_witness, s) + " (blocks)";
    }
    suite.note(mod, std::string("tabulated extrema, ") + to_string(family), e.table_matches(), detail);
  }
}

void dimension_checks(Suite& suite, const SystemParams& params, const ProbVector& P, const RestrictedCylinders& geo,
                      int max_rank, int k_max) {
  const std::string mod = "dimension";
  const long l = params.odd_count();
  const long m = params.even_count();
  suite.guarded(mod, "parity counts: recursion, tabulated steps 1-4, enumeration", [&](bool& ok) {
    const std::vector<std::pair<long, long>> lm = {{1, 2}, {2, 2}, {2, 3}, {l, m}};
    for (const auto& [a, b] : lm) {
      for (int step = 1; step <= 4 && ok; ++step) ok = parity_counts(a, b, step).family == tabulated_step_counts(a, b, step);
    }
    for (int n = 1; n <= 4 && ok; ++n) {
      const ParityCounts pc = parity_counts(params, n);
      std::array<BigInt, 4> fam{0, 0, 0, 0};
      BigInt even = 0;
      BigInt odd = 0;
      for (const auto& base : all_bases(params.restricted_alphabet(), n)) {
        int parent = 0;
        for (std::size_t i = 0; i + 1 < base.size(); ++i) parent += base[i];
        const int c = base.back();
        const int j = c % 2 ? (parent % 2 ? 1 : 2) : (parent % 2 ? 3 : 4);
        fam[static_cast<std::size_t>(j - 1)] += 1;
        ((parent + c) % 2 ? odd : even) += 1;
      }
      BigInt total = 1;
      for (int i = 1; i < n; ++i) total *= (l + m);
      ok = fam == pc.family && even == pc.even && odd == pc.odd && pc.family[0] + pc.family[1] == l * total &&
           pc.family[2] + pc.family[3] == m * total;
    }
    return "(l, m) = (" + std::to_string(l) + ", " + std::to_string(m) + ")";
  });
  const ParityChain chain(geo);
  suite.guarded(mod, "transfer matrix sum = brute force over covers", [&](bool& ok) {
    const Rational d0 = geo.tails().hull(TailConvention::ComplementEven).diameter();
    double worst = 0;
    for (int k = 1; k <= std::min(3, max_rank) && ok; ++k) {
      const Cover cover = build_cover(geo, k);
      for (int i = 0; i < 20; ++i) {
        const double alpha = 0.05 * (i + 1);
        double brute = 0;
        for (const auto& cell : cover.cells) brute += std::exp(alpha * log_of(cell.interval.length() / d0));
        const double rel = std::fabs(chain.power_sum(k, alpha) - brute) / brute;
        worst = std::max(worst, rel);
      }
    }
    ok = worst <= 1e-12;
    return "max relative difference " + fmt(worst);
  });
  suite.guarded(mod, "solver residuals and Moran equation roots", [&](bool& ok) {
    const double a5 = dim_theorem5(params);
    const double a7 = dim_theorem7(params, P);
    ok = std::fabs(moran_eq2_residual(theorem5_ratios(params), a5)) <= 1e-10 &&
         std::fabs(moran_eq2_residual(theorem7_ratios(params, P), a7)) <= 1e-10 && a7 > 0 && a7 < 1;
    if (P.is_uniform()) ok = ok && std::fabs(a7 - a5) <= 1e-10;
    return "theorem 5 root " + fmt(a5) + ", theorem 7 root " + fmt(a7);
  });
  suite.guarded(mod, "pre-dimension trace", [&](bool& ok) {
    const DimensionTrace tr = dimension_trace(geo, k_max, std::min(10, k_max), false);
    double step = 0;
    for (std::size_t i = 0; i < tr.alphas.size(); ++i) {
      ok = ok && tr.alphas[i] > 0 && tr.alphas[i] < 1 && std::fabs(tr.residuals[i]) <= 1e-10;
      if (i + 1 < tr.alphas.size() && i + 1 >= 10) step = std::max(step, std::fabs(tr.alphas[i + 1] - tr.alphas[i]));
    }
    if (P.is_uniform()) {
      const double a5 = dim_theorem5(params);
      for (double a : tr.alphas) ok = ok && std::fabs(a - a5) <= 1e-10;
      ok = ok && std::fabs(tr.liminf_est - a5) <= 1e-10;
    } else {
      ok = ok && step <= 1e-3;
    }
    for (int k = 1; k <= 3; ++k) {
      for (int i = 1; i < 10; ++i) ok = ok && chain.power_sum(k, 0.1 * (i + 1)) < chain.power_sum(k, 0.1 * i);
    }
    return "liminf " + fmt(tr.liminf_est) + ", limsup " + fmt(tr.limsup_est) + ", spectral root " +
           fmt(tr.spectral_root);
  });
  suite.guarded(mod, "Moran-structure hypotheses", [&](bool& ok) {
    const DimensionTrace tr = dimension_trace(geo, 2, 1, false);
    ok = tr.flags.lower_positive && tr.flags.upper_below_one && tr.flags.bounded_branching;
    return "c_lower " + fmt(tr.flags.c_lower) + ", c_upper " + fmt(tr.flags.c_upper) + ", branching " +
           std::to_string(tr.flags.branching);
  });
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& config) {
  VerifyReport report;
  Suite suite(report);
  const SystemParams params(config.base, config.run_digit);
  const ProbVector P = ProbVector::parse(config.P, config.base);
  Rng rng(config.seed);
  core_digit_checks(suite, params, rng, config.samples);
  numeral_checks(suite, config.base, rng, config.samples);
  salem_checks(suite, P, rng, config.samples);
  const RestrictedCylinders geo(params, P);
  cylinder_checks(suite, params, P, geo, config.max_rank);
  moran_checks(suite, params, P, geo, config.max_rank);
  dimension_checks(suite, params, P, geo, config.max_rank, config.k_max);
  return report;
}

}  // namespace negamoran
