#include "negamoran/cylinders.hpp"

#include <algorithm>
#include <stdexcept>

namespace negamoran {

const char* to_string(CylinderSystem system) {
  switch (system) {
    case CylinderSystem::P: return "P";
    case CylinderSystem::NegP: return "negP";
    case CylinderSystem::SPu: return "SPu";
    case CylinderSystem::SNegPu: return "SnegPu";
  }
  return "?";
}

CylinderSystem parse_cylinder_system(std::string_view text) {
  if (text == "P") return CylinderSystem::P;
  if (text == "negP") return CylinderSystem::NegP;
  if (text == "SPu") return CylinderSystem::SPu;
  if (text == "SnegPu") return CylinderSystem::SNegPu;
  throw std::invalid_argument("unknown cylinder system '" + std::string(text) +
                              "' (expected P, negP, SPu or SnegPu)");
}

CylinderSpec parse_cylinder_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("cylinder spec needs the form system:base, got '" + std::string(text) + "'");
  }
  CylinderSpec spec{parse_cylinder_system(text.substr(0, colon)), {}};
  std::string_view rest = text.substr(colon + 1);
  std::size_t offset = colon + 1;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
      throw std::invalid_argument("bad cylinder digit at offset " + std::to_string(offset));
    }
    spec.base.push_back(std::stoi(std::string(item)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
    offset += comma + 1;
    if (rest.empty()) throw std::invalid_argument("trailing comma in cylinder spec");
  }
  return spec;
}

namespace {

void check_digits(const ProbVector& P, const std::vector<int>& base) {
  for (int d : base) {
    if (d < 0 || d >= P.size()) throw std::invalid_argument("cylinder digit " + std::to_string(d) + " out of range");
  }
}

void check_blocks(const SystemParams& params, const std::vector<int>& base) {
  for (int c : base) {
    if (!params.admissible(c)) {
      throw std::invalid_argument("cylinder block " + std::to_string(c) + " not in the restricted alphabet");
    }
  }
}

}  // namespace

Interval cyl_interval_P(const ProbVector& P, const std::vector<int>& base) {
  check_digits(P, base);
  const int top = P.size() - 1;
  return {eval_P(P, DigitSeq(base)), eval_P(P, DigitSeq(base, {top}))};
}

Interval cyl_interval_negP(const ProbVector& P, const std::vector<int>& base) {
  check_digits(P, base);
  const int top = P.size() - 1;
  const Rational a = eval_negP(P, DigitSeq(base, {top, 0}));
  const Rational b = eval_negP(P, DigitSeq(base, {0, top}));
  // Odd rank: the (s-1)0 tail is the infimum; even rank: the reverse.
  return base.size() % 2 == 1 ? Interval{a, b} : Interval{b, a};
}

Rational negP_diameter_product(const ProbVector& P, const std::vector<int>& base) {
  check_digits(P, base);
  Rational w = 1;
  for (std::size_t j = 0; j < base.size(); ++j) w *= P.p_tilde(base[j], j + 1);
  return w;
}

RestrictedCylinders::RestrictedCylinders(const SystemParams& params, const ProbVector& P) : tails_(params, P) {}

std::vector<int> RestrictedCylinders::expanded(const std::vector<int>& base) const {
  check_blocks(params(), base);
  std::vector<int> digits;
  for (int c : base) {
    digits.insert(digits.end(), static_cast<std::size_t>(c - 1), params().run_digit());
    digits.push_back(c);
  }
  return digits;
}

Rational RestrictedCylinders::prefix_offset(const std::vector<int>& base) const {
  std::vector<int> digits = expanded(base);
  const int s = params().base();
  for (std::size_t i = 1; i < digits.size(); i += 2) digits[i] = s - 1 - digits[i];
  return eval_P(probabilities(), DigitSeq(digits));
}

Rational RestrictedCylinders::prefix_weight(const std::vector<int>& base) const {
  check_blocks(params(), base);
  const ProbVector& P = probabilities();
  Rational terminals = 1;
  std::vector<std::size_t> partial_sums;
  std::size_t sum = 0;
  for (int c : base) {
    sum += static_cast<std::size_t>(c);
    partial_sums.push_back(sum);
    terminals *= P.p_tilde(c, sum);
  }
  Rational runs = 1;
  for (std::size_t i = 1; i + 1 <= sum; ++i) {
    if (std::find(partial_sums.begin(), partial_sums.end(), i) != partial_sums.end()) continue;
    runs *= P.p_tilde(params().run_digit(), i);
  }
  return terminals * runs;
}

TailConvention RestrictedCylinders::tail_after(const std::vector<int>& base) const {
  int sum = 0;
  for (int c : base) sum += c;
  return sum % 2 == 0 ? TailConvention::ComplementEven : TailConvention::ComplementOdd;
}

Interval RestrictedCylinders::interval(const std::vector<int>& base) const {
  const Rational tau = prefix_offset(base);
  const Rational w = prefix_weight(base);
  const TailHull& hull = tails_.hull(tail_after(base));
  return {tau + w * hull.inf.value, tau + w * hull.sup.value};
}

Rational RestrictedCylinders::diameter(const std::vector<int>& base) const {
  return prefix_weight(base) * tails_.hull(tail_after(base)).diameter();
}

Interval RestrictedCylinders::interval_by_blocks(const std::vector<int>& base) const {
  check_blocks(params(), base);
  Rational offset = 0;
  Rational scale = 1;
  TailConvention state = TailConvention::ComplementEven;
  for (int c : base) {
    const BlockMap m = block_map(params(), probabilities(), state, c);
    offset += scale * m.offset;
    scale *= m.scale;
    state = m.next;
  }
  const TailHull& hull = tails_.hull(state);
  return {offset + scale * hull.inf.value, offset + scale * hull.sup.value};
}

Interval RestrictedCylinders::interval_by_extremal_words(const std::vector<int>& base) const {
  check_blocks(params(), base);
  const TailHull& hull = tails_.hull(tail_after(base));
  auto evaluate = [&](const BlockSeq& tail) {
    BlockSeq word;
    word.prefix = base;
    word.prefix.insert(word.prefix.end(), tail.prefix.begin(), tail.prefix.end());
    word.period = tail.period;
    return eval_negP(probabilities(), expand_blocks(params(), word));
  };
  return {evaluate(hull.inf.witness), evaluate(hull.sup.witness)};
}

Rational RestrictedCylinders::child_ratio(const std::vector<int>& base, int c) const {
  std::vector<int> child = base;
  child.push_back(c);
  return diameter(child) / diameter(base);
}

Rational RestrictedCylinders::child_ratio_closed_form(Parity parent_sum, int c) const {
  check_blocks(params(), {c});
  const ProbVector& P = probabilities();
  const int s = params().base();
  const int u = params().run_digit();
  // Position parity of the first run digit after the parent prefix.
  const bool parent_even = parent_sum == Parity::Even;
  Rational run = 1;
  for (int i = 1; i < c; ++i) {
    const bool odd_position = (i % 2 == 1) == parent_even;
    run *= odd_position ? P.p(u) : P.p(s - 1 - u);
  }
  const bool terminal_odd = ((c % 2 == 1) == parent_even);
  Rational ratio = run * (terminal_odd ? P.p(c) : P.p(s - 1 - c));
  if (c % 2 == 1) {
    const Rational over = tails_.hull(TailConvention::ComplementEven).diameter();
    const Rational under = tails_.hull(TailConvention::ComplementOdd).diameter();
    ratio *= parent_even ? under / over : over / under;
  }
  return ratio;
}

Interval RestrictedCylinders::plain_interval(const std::vector<int>& base) const {
  const std::vector<int> digits = expanded(base);
  Rational w = 1;
  for (int d : digits) w *= probabilities().p(d);
  const Rational tau = eval_P(probabilities(), DigitSeq(digits));
  const TailHull& hull = tails_.hull(TailConvention::Plain);
  return {tau + w * hull.inf.value, tau + w * hull.sup.value};
}

Interval cylinder_interval(const SystemParams& params, const ProbVector& P, const CylinderSpec& spec) {
  switch (spec.system) {
    case CylinderSystem::P: return cyl_interval_P(P, spec.base);
    case CylinderSystem::NegP: return cyl_interval_negP(P, spec.base);
    case CylinderSystem::SPu: return RestrictedCylinders(params, P).plain_interval(spec.base);
    case CylinderSystem::SNegPu: return RestrictedCylinders(params, P).interval(spec.base);
  }
  throw std::logic_error("unreachable");
}

const char* to_string(SeparationRegime regime) {
  switch (regime) {
    case SeparationRegime::LowRun: return "u in {0,1}";
    case SeparationRegime::MiddleRun: return "u in {2..s-3}";
    case SeparationRegime::HighRun: return "u in {s-2,s-1}";
  }
  return "?";
}

SeparationReport separation_check(const RestrictedCylinders& geometry, const std::vector<int>& base, int c) {
  const SystemParams& params = geometry.params();
  if (!params.admissible(c) || !params.admissible(c + 1)) {
    throw std::invalid_argument("separation needs c and c+1 in the restricted alphabet");
  }
  const int s = params.base();
  const int u = params.run_digit();
  int sum = c;
  for (int d : base) sum += d;
  const bool even = sum % 2 == 0;

  SeparationReport report{};
  if (u <= 1) {
    report.regime = SeparationRegime::LowRun;
    report.predicted_c_first = even;
  } else if (u >= s - 2) {
    report.regime = SeparationRegime::HighRun;
    report.predicted_c_first = !even;
  } else {
    report.regime = SeparationRegime::MiddleRun;
    report.predicted_c_first = even ? u < c : c + 1 <= u;
  }

  std::vector<int> left = base;
  left.push_back(c);
  std::vector<int> right = base;
  right.push_back(c + 1);
  const Interval a = geometry.interval(left);
  const Interval b = geometry.interval(right);
  if (a.hi < b.lo) {
    report.observed_c_first = true;
    report.gap = b.lo - a.hi;
  } else if (b.hi < a.lo) {
    report.observed_c_first = false;
    report.gap = a.lo - b.hi;
  } else {
    report.observed_c_first = a.lo <= b.lo;
    report.gap = std::max(a.lo, b.lo) - std::min(a.hi, b.hi);
  }
  return report;
}

bool adjacency_check_P(const ProbVector& P, const std::vector<int>& base, int c) {
  if (c < 0 || c > P.size() - 2) throw std::invalid_argument("adjacency needs c <= s-2");
  std::vector<int> left = base;
  left.push_back(c);
  std::vector<int> right = base;
  right.push_back(c + 1);
  return cyl_interval_P(P, left).hi == cyl_interval_P(P, right).lo;
}

bool adjacency_check_negP(const ProbVector& P, const std::vector<int>& base, int c) {
  if (c < 0 || c > P.size() - 2) throw std::invalid_argument("adjacency needs c <= s-2");
  std::vector<int> left = base;
  left.push_back(c);
  std::vector<int> right = base;
  right.push_back(c + 1);
  const Interval a = cyl_interval_negP(P, left);
  const Interval b = cyl_interval_negP(P, right);
  return left.size() % 2 == 1 ? a.hi == b.lo : b.hi == a.lo;
}

bool children_tile_parent(const ProbVector& P, CylinderSystem system, const std::vector<int>& base) {
  if (system != CylinderSystem::P && system != CylinderSystem::NegP) {
    throw std::invalid_argument("tiling applies to P and negP cylinders only");
  }
  auto interval_of = [&](const std::vector<int>& b) {
    return system == CylinderSystem::P ? cyl_interval_P(P, b) : cyl_interval_negP(P, b);
  };
  std::vector<Interval> children;
  for (int d = 0; d < P.size(); ++d) {
    std::vector<int> child = base;
    child.push_back(d);
    children.push_back(interval_of(child));
  }
  std::sort(children.begin(), children.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  const Interval parent = interval_of(base);
  if (children.front().lo != parent.lo || children.back().hi != parent.hi) return false;
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i - 1].hi != children[i].lo) return false;
  }
  return true;
}

}  // namespace negamoran
