#include "negamoran/digits.hpp"

#include <algorithm>
#include <cctype>

namespace negamoran {

SystemParams::SystemParams(int base, int run_digit) : base_(base), run_digit_(run_digit) {
  if (base < 4) {
    throw std::invalid_argument("base s must be at least 4 (got " + std::to_string(base) + ")");
  }
  if (run_digit < 0 || run_digit >= base) {
    throw std::invalid_argument("run digit u must lie in [0, s-1] (got " +
                                std::to_string(run_digit) + ")");
  }
  for (int c = 1; c < base; ++c) {
    if (c == run_digit) continue;
    restricted_.push_back(c);
    (c % 2 == 1 ? odd_count_ : even_count_) += 1;
  }
}

bool SystemParams::admissible(int c) const { return c >= 1 && c < base_ && c != run_digit_; }

namespace {

void minimise_period(std::vector<int>& period) {
  const std::size_t n = period.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = period[i] == period[i - d];
    if (ok) {
      period.resize(d);
      return;
    }
  }
}

void absorb_prefix(std::vector<int>& prefix, std::vector<int>& period) {
  while (!prefix.empty() && !period.empty() && prefix.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    prefix.pop_back();
  }
}

}  // namespace

DigitSeq::DigitSeq(std::vector<int> prefix, std::vector<int> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {}

int DigitSeq::at(std::size_t position) const {
  if (position == 0) throw std::out_of_range("digit positions are 1-indexed");
  if (position <= prefix_.size()) return prefix_[position - 1];
  if (period_.empty()) return 0;
  return period_[(position - prefix_.size() - 1) % period_.size()];
}

DigitSeq DigitSeq::parity_aligned() const {
  if (period_.empty()) return DigitSeq(prefix_, {0, 0});
  if (period_.size() % 2 == 0) return *this;
  std::vector<int> doubled = period_;
  doubled.insert(doubled.end(), period_.begin(), period_.end());
  return DigitSeq(prefix_, std::move(doubled));
}

DigitSeq DigitSeq::canonical() const {
  std::vector<int> prefix = prefix_;
  std::vector<int> period = period_;
  if (std::all_of(period.begin(), period.end(), [](int d) { return d == 0; })) period.clear();
  if (period.empty()) {
    while (!prefix.empty() && prefix.back() == 0) prefix.pop_back();
    return DigitSeq(std::move(prefix));
  }
  minimise_period(period);
  absorb_prefix(prefix, period);
  return DigitSeq(std::move(prefix), std::move(period));
}

void DigitSeq::validate(int base) const {
  auto check = [base](const std::vector<int>& v, const char* part) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= base) {
        throw std::invalid_argument(std::string("digit ") + std::to_string(v[i]) + " at " + part +
                                    " index " + std::to_string(i) + " outside [0, " +
                                    std::to_string(base - 1) + "]");
      }
    }
  };
  check(prefix_, "prefix");
  check(period_, "period");
}

bool same_word(const DigitSeq& a, const DigitSeq& b) { return a.canonical() == b.canonical(); }

BlockSeq BlockSeq::canonical() const {
  BlockSeq out = *this;
  if (out.period.empty()) return out;
  minimise_period(out.period);
  absorb_prefix(out.prefix, out.period);
  return out;
}

LanguageError::LanguageError(std::size_t index, const std::string& reason)
    : std::invalid_argument(reason + " (at index " + std::to_string(index) + ")"), index_(index) {}

namespace {

void append_block(const SystemParams& params, int alpha, std::vector<int>& out) {
  if (!params.admissible(alpha)) {
    throw std::invalid_argument("block value " + std::to_string(alpha) +
                                " is not in the restricted alphabet");
  }
  out.insert(out.end(), static_cast<std::size_t>(alpha - 1), params.run_digit());
  out.push_back(alpha);
}

struct ParseState {
  int run = 0;
  std::size_t block_start = 0;
};

struct Violation {
  std::size_t index;
  std::string reason;
};

// Feeds one digit, recording completed blocks with their start index.
std::optional<Violation> feed(const SystemParams& params, ParseState& st, std::size_t index,
                              int digit, std::vector<std::pair<std::size_t, int>>& blocks) {
  const int s = params.base();
  const int u = params.run_digit();
  if (digit < 0 || digit >= s) return Violation{index, "digit " + std::to_string(digit) + " out of range"};
  if (st.run == 0) st.block_start = index;
  if (digit == u) {
    ++st.run;
    if (st.run > s - 2) return Violation{index, "u-run longer than s-2"};
    return std::nullopt;
  }
  if (digit == 0) return Violation{index, "digit 0 forbidden"};
  if (digit != st.run + 1) {
    return Violation{index, "block terminal " + std::to_string(digit) + " after a u-run of length " +
                                std::to_string(st.run)};
  }
  blocks.emplace_back(st.block_start, digit);
  st.run = 0;
  return std::nullopt;
}

struct ParseResult {
  BlockSeq blocks;
  std::optional<Violation> violation;
};

ParseResult parse_runs(const SystemParams& params, const DigitSeq& digits) {
  ParseResult result;
  ParseState st;
  std::vector<std::pair<std::size_t, int>> blocks;
  std::size_t index = 0;
  for (int d : digits.prefix()) {
    if (auto v = feed(params, st, index++, d, blocks)) {
      result.violation = v;
      return result;
    }
  }
  if (digits.terminating()) {
    if (st.run != 0) {
      result.violation = Violation{st.block_start, "unterminated u-run"};
      return result;
    }
    for (const auto& b : blocks) result.blocks.prefix.push_back(b.second);
    return result;
  }

  // The parser state at the start of each period repetition is the open run
  // length, which takes at most s-1 values; two repetitions with the same
  // state bound the periodic part of the block sequence.
  const std::size_t L = digits.period().size();
  const std::size_t reps = static_cast<std::size_t>(params.base()) + 1;
  std::vector<int> state_at_rep;
  std::vector<std::size_t> rep_start;
  std::optional<std::pair<std::size_t, std::size_t>> cycle;
  for (std::size_t r = 0; r < reps && !cycle; ++r) {
    for (std::size_t i = 0; i < r; ++i) {
      if (state_at_rep[i] == st.run) {
        cycle = std::make_pair(i, r);
        break;
      }
    }
    if (cycle) break;
    state_at_rep.push_back(st.run);
    rep_start.push_back(index);
    for (int d : digits.period()) {
      if (auto v = feed(params, st, index++, d, blocks)) {
        result.violation = v;
        return result;
      }
    }
  }
  if (!cycle) throw std::logic_error("run parser found no repeating state");
  const auto [i, j] = *cycle;
  const std::size_t qi = rep_start[i] - static_cast<std::size_t>(state_at_rep[i]);
  const std::size_t qj = qi + (j - i) * L;
  for (const auto& [start, alpha] : blocks) {
    if (start < qi) {
      result.blocks.prefix.push_back(alpha);
    } else if (start < qj) {
      result.blocks.period.push_back(alpha);
    }
  }
  result.blocks = result.blocks.canonical();
  return result;
}

}  // namespace

DigitSeq expand_blocks(const SystemParams& params, const BlockSeq& blocks) {
  std::vector<int> prefix;
  std::vector<int> period;
  for (int a : blocks.prefix) append_block(params, a, prefix);
  for (int a : blocks.period) append_block(params, a, period);
  return DigitSeq(std::move(prefix), std::move(period));
}

BlockSeq contract_blocks(const SystemParams& params, const DigitSeq& digits) {
  ParseResult r = parse_runs(params, digits);
  if (r.violation) throw LanguageError(r.violation->index, r.violation->reason);
  return r.blocks;
}

Membership check_run_language(const SystemParams& params, const DigitSeq& digits) {
  ParseResult r = parse_runs(params, digits);
  Membership m;
  m.accepted = !r.violation.has_value();
  if (r.violation) {
    m.index = r.violation->index;
    m.reason = r.violation->reason;
  }
  return m;
}

DigitSeq complement_positions(int base, const DigitSeq& digits, Parity which) {
  const DigitSeq aligned = digits.parity_aligned();
  const int flip_remainder = which == Parity::Even ? 0 : 1;
  std::vector<int> prefix = aligned.prefix();
  std::vector<int> period = aligned.period();
  std::size_t pos = 1;
  for (int& d : prefix) {
    if (static_cast<int>(pos++ % 2) == flip_remainder) d = base - 1 - d;
  }
  for (int& d : period) {
    if (static_cast<int>(pos++ % 2) == flip_remainder) d = base - 1 - d;
  }
  return DigitSeq(std::move(prefix), std::move(period)).canonical();
}

namespace {

std::string join(const std::vector<int>& v, bool commas) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (commas && i != 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string format_pair(const std::vector<int>& prefix, const std::vector<int>& period, bool commas) {
  std::string out = join(prefix, commas);
  if (!period.empty()) out += "(" + join(period, commas) + ")";
  return out;
}

}  // namespace

DigitSeq parse_digits(std::string_view text, int base) {
  const bool commas = base > 10 || text.find(',') != std::string_view::npos;
  std::vector<int> prefix;
  std::vector<int> period;
  bool in_period = false;
  bool closed = false;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("digit word '" + std::string(text) + "': " + why + " at offset " +
                                std::to_string(i));
  };
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    if (closed) fail("text after the closing parenthesis");
    if (ch == '(') {
      if (in_period) fail("nested period");
      in_period = true;
      ++i;
      continue;
    }
    if (ch == ')') {
      if (!in_period) fail("unmatched ')'");
      if (period.empty()) fail("empty period");
      closed = true;
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail("unexpected character");
    int value = 0;
    if (commas) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * 10 + (text[i] - '0');
        if (value > 1'000'000) fail("digit too large");
        ++i;
      }
    } else {
      value = ch - '0';
      ++i;
    }
    if (value >= base) fail("digit " + std::to_string(value) + " not below base " + std::to_string(base));
    (in_period ? period : prefix).push_back(value);
  }
  if (in_period && !closed) fail("unterminated period");
  return DigitSeq(std::move(prefix), std::move(period));
}

std::string format_digits(const DigitSeq& digits, int base) {
  return format_pair(digits.prefix(), digits.period(), base > 10);
}

std::string format_blocks(const BlockSeq& blocks, int base) {
  return format_pair(blocks.prefix, blocks.period, base > 10);
}

}  // namespace negamoran
