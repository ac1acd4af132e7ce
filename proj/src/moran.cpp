#include "negamoran/moran.hpp"

#include "negamoran/numeral.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>
#include <thread>

namespace negamoran {

CapExceeded::CapExceeded(std::uint64_t required, std::uint64_t cap)
    : std::runtime_error("cover needs " + std::to_string(required) + " cells, above the cap of " +
                         std::to_string(cap) + " (raise --cap to at least " + std::to_string(required) + ")"),
      required_(required),
      cap_(cap) {}

std::uint64_t cover_size(const SystemParams& params, int rank) {
  const auto k = static_cast<std::uint64_t>(params.restricted_alphabet().size());
  std::uint64_t total = 1;
  for (int i = 0; i < rank; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
    total *= k;
  }
  return total;
}

namespace {

struct Frame {
  Rational offset;
  Rational scale;
  TailConvention state;
};

// Depth-first over block tuples, composing block maps incrementally.
void enumerate(const RestrictedCylinders& geometry, int rank, std::vector<int>& base, const Frame& frame,
               std::vector<CoverCell>& out) {
  if (static_cast<int>(base.size()) == rank) {
    const TailHull& hull = geometry.tails().hull(frame.state);
    Interval iv{frame.offset + frame.scale * hull.inf.value, frame.offset + frame.scale * hull.sup.value};
    iv.lo.canonicalize();
    iv.hi.canonicalize();
    out.push_back({base, std::move(iv)});
    return;
  }
  for (int c : geometry.params().restricted_alphabet()) {
    const BlockMap m = block_map(geometry.params(), geometry.probabilities(), frame.state, c);
    Frame next{frame.offset + frame.scale * m.offset, frame.scale * m.scale, m.next};
    base.push_back(c);
    enumerate(geometry, rank, base, next, out);
    base.pop_back();
  }
}

}  // namespace

Cover build_cover(const RestrictedCylinders& geometry, int rank, std::uint64_t cap) {
  if (rank < 1) throw std::invalid_argument("cover rank must be at least 1");
  const std::uint64_t required = cover_size(geometry.params(), rank);
  if (required > cap) throw CapExceeded(required, cap);

  const auto& alphabet = geometry.params().restricted_alphabet();
  std::vector<std::vector<CoverCell>> parts(alphabet.size());
  auto work = [&](std::size_t i) {
    const int c = alphabet[i];
    const BlockMap m = block_map(geometry.params(), geometry.probabilities(), TailConvention::ComplementEven, c);
    std::vector<int> base{c};
    enumerate(geometry, rank, base, Frame{m.offset, m.scale, m.next}, parts[i]);
  };
  if (required < 512) {
    for (std::size_t i = 0; i < alphabet.size(); ++i) work(i);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t i = 0; i < alphabet.size(); ++i) workers.emplace_back(work, i);
    for (auto& t : workers) t.join();
  }

  Cover cover;
  cover.rank = rank;
  cover.cells.reserve(static_cast<std::size_t>(required));
  for (auto& part : parts) {
    for (auto& cell : part) cover.cells.push_back(std::move(cell));
  }
  std::sort(cover.cells.begin(), cover.cells.end(),
            [](const CoverCell& a, const CoverCell& b) { return a.interval.lo < b.interval.lo; });
  cover.total_length = 0;
  for (std::size_t i = 0; i < cover.cells.size(); ++i) {
    if (i > 0 && !(cover.cells[i - 1].interval.hi < cover.cells[i].interval.lo)) {
      throw std::logic_error("cover cells " + format_blocks({cover.cells[i - 1].base, {}}, 10) + " and " +
                             format_blocks({cover.cells[i].base, {}}, 10) + " are not separated");
    }
    cover.total_length += cover.cells[i].interval.length();
  }
  return cover;
}

MeasureReport measure_sequence(const RestrictedCylinders& geometry, int n_max, std::uint64_t cap) {
  const SystemParams& params = geometry.params();
  const ProbVector& P = geometry.probabilities();
  MeasureReport report;
  report.lambda_over = geometry.tails().hull(TailConvention::ComplementEven).diameter();
  report.lambda_under = geometry.tails().hull(TailConvention::ComplementOdd).diameter();
  report.v_even = 0;
  report.v_odd = 0;
  for (int c : params.restricted_alphabet()) {
    report.v_even += block_map(params, P, TailConvention::ComplementEven, c).scale;
    report.v_odd += block_map(params, P, TailConvention::ComplementOdd, c).scale;
  }
  report.V = std::max(report.v_even, report.v_odd);
  const Rational top = std::max(report.lambda_over, report.lambda_under);

  // Total prefix weight of tuples ending in each parity class.
  Rational weight_even = 1;
  Rational weight_odd = 0;
  Rational v_power = 1;
  for (int n = 1; n <= n_max; ++n) {
    Rational next_even = 0;
    Rational next_odd = 0;
    for (int c : params.restricted_alphabet()) {
      const Rational from_even = weight_even * block_map(params, P, TailConvention::ComplementEven, c).scale;
      const Rational from_odd = weight_odd * block_map(params, P, TailConvention::ComplementOdd, c).scale;
      if (c % 2 == 0) {
        next_even += from_even;
        next_odd += from_odd;
      } else {
        next_odd += from_even;
        next_even += from_odd;
      }
    }
    weight_even = next_even;
    weight_odd = next_odd;
    v_power *= report.V;

    MeasureRow row;
    row.n = n;
    row.measure = build_cover(geometry, n, cap).total_length;
    row.bound = top * v_power;
    row.weighted_sum = weight_even * report.lambda_over + weight_odd * report.lambda_under;
    report.rows.push_back(std::move(row));
  }
  return report;
}

const char* to_string(ExtremaFamily family) {
  switch (family) {
    case ExtremaFamily::SPuOver: return "SPu_over";
    case ExtremaFamily::SPuUnder: return "SPu_under";
    case ExtremaFamily::SNegPu: return "SnegPu";
    case ExtremaFamily::SNegSu: return "Sneg_s_u";
    case ExtremaFamily::SPu: return "SPu";
  }
  return "?";
}

ExtremaFamily parse_extrema_family(std::string_view text) {
  for (auto f : {ExtremaFamily::SPuOver, ExtremaFamily::SPuUnder, ExtremaFamily::SNegPu, ExtremaFamily::SNegSu,
                 ExtremaFamily::SPu}) {
    if (text == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown set family '" + std::string(text) +
                              "' (expected SPu_over, SPu_under, SnegPu, Sneg_s_u or SPu)");
}

bool SetExtrema::table_matches() const {
  if (!table_lo || !table_hi) return true;
  return *table_lo == lo && *table_hi == hi;
}

namespace {

struct TableWords {
  std::string source;
  DigitSeq lo;
  DigitSeq hi;
};

// Closed-form periodic words for the extrema, as tabulated for each family.
TableWords table_words(ExtremaFamily family, int s, int u) {
  const std::string low = u == 0 ? "u = 0" : u == 1 ? "u = 1" : "u >= 2";
  switch (family) {
    case ExtremaFamily::SPuOver:
    case ExtremaFamily::SNegPu: {
      DigitSeq lo = u <= 1 ? DigitSeq({}, {u, s - 3}) : DigitSeq({1}, {s - 1 - u, 2});
      DigitSeq hi = u == 0   ? DigitSeq({1}, {s - 1, 2})
                    : u == 1 ? DigitSeq({1, s - 2, 3}, {s - 2, 2})
                             : DigitSeq({}, {u, s - 3});
      return {low, lo, hi};
    }
    case ExtremaFamily::SPuUnder: {
      DigitSeq lo = u == 0   ? DigitSeq({s - 2}, {0, s - 3})
                    : u == 1 ? DigitSeq({s - 2, 1, s - 4}, {1, s - 3})
                             : DigitSeq({}, {s - 1 - u, 2});
      DigitSeq hi = u <= 1 ? DigitSeq({}, {s - 1 - u, 2}) : DigitSeq({s - 2}, {u, s - 3});
      return {low, lo, hi};
    }
    case ExtremaFamily::SNegSu: {
      DigitSeq lo = u == 0 ? DigitSeq({1}, {0, 2}) : u == 1 ? DigitSeq({1, 1, 3}, {1, 2}) : DigitSeq({}, {u, 2});
      DigitSeq hi = u <= 1 ? DigitSeq({}, {u, 2}) : DigitSeq({1}, {u, 2});
      return {low, lo, hi};
    }
    case ExtremaFamily::SPu: break;
  }
  throw std::logic_error("no table for this family");
}

}  // namespace

SetExtrema set_extrema(const TailSets& tails, ExtremaFamily family) {
  const SystemParams& params = tails.params();
  const int s = params.base();
  const int u = params.run_digit();
  SetExtrema out;
  if (family == ExtremaFamily::SPu) {
    const TailHull& h = tails.hull(TailConvention::Plain);
    out.lo = h.inf.value;
    out.hi = h.sup.value;
    out.lo_witness = h.inf.witness;
    out.hi_witness = h.sup.witness;
    out.source = "solver";
    return out;
  }

  const TableWords words = table_words(family, s, u);
  out.source = words.source;
  out.table_lo_word = words.lo;
  out.table_hi_word = words.hi;
  if (family == ExtremaFamily::SNegSu) {
    // nega-s value = 1/(s+1) - (uniform nega-P value), which reverses order.
    const TailSets uniform(params, ProbVector::uniform(s));
    const TailHull& h = uniform.hull(TailConvention::ComplementEven);
    const Rational shift(1, s + 1);
    out.lo = shift - h.sup.value;
    out.hi = shift - h.inf.value;
    out.lo_witness = h.sup.witness;
    out.hi_witness = h.inf.witness;
    out.table_lo = eval_nega_s_adic(s, words.lo);
    out.table_hi = eval_nega_s_adic(s, words.hi);
  } else {
    const TailHull& h = tails.hull(family == ExtremaFamily::SPuUnder ? TailConvention::ComplementOdd
                                                                     : TailConvention::ComplementEven);
    out.lo = h.inf.value;
    out.hi = h.sup.value;
    out.lo_witness = h.inf.witness;
    out.hi_witness = h.sup.witness;
    out.table_lo = eval_P(tails.probabilities(), words.lo);
    out.table_hi = eval_P(tails.probabilities(), words.hi);
  }
  out.lo.canonicalize();
  out.hi.canonicalize();
  return out;
}

Membership digit_membership(const SystemParams& params, const DigitSeq& digits) {
  return check_run_language(params, digits);
}

namespace {

std::string base_text(const std::vector<int>& base) {
  std::string text;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) text += ' ';
    text += std::to_string(base[i]);
  }
  return text;
}

}  // namespace

std::string cover_to_csv(const Cover& cover, int precision) {
  std::ostringstream out;
  out << "rank,base,lo_num,lo_den,hi_num,hi_den,decimal_lo,decimal_hi\n";
  for (const auto& cell : cover.cells) {
    out << cover.rank << ',' << base_text(cell.base) << ',' << cell.interval.lo.get_num().get_str() << ','
        << cell.interval.lo.get_den().get_str() << ',' << cell.interval.hi.get_num().get_str() << ','
        << cell.interval.hi.get_den().get_str() << ',' << to_decimal(cell.interval.lo, precision) << ','
        << to_decimal(cell.interval.hi, precision) << '\n';
  }
  return out.str();
}

std::string cover_to_json(const Cover& cover, int precision) {
  nlohmann::ordered_json doc;
  doc["rank"] = cover.rank;
  doc["count"] = cover.cells.size();
  doc["total_length"] = to_string(cover.total_length);
  doc["total_length_decimal"] = to_decimal(cover.total_length, precision);
  auto cells = nlohmann::ordered_json::array();
  for (const auto& cell : cover.cells) {
    cells.push_back({{"base", cell.base},
                     {"lo", to_string(cell.interval.lo)},
                     {"hi", to_string(cell.interval.hi)},
                     {"decimal_lo", to_decimal(cell.interval.lo, precision)},
                     {"decimal_hi", to_decimal(cell.interval.hi, precision)}});
  }
  doc["intervals"] = std::move(cells);
  return doc.dump(2) + "\n";
}

}  // namespace negamoran
