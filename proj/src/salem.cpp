#include "negamoran/salem.hpp"

#include "affine_word.hpp"

#include <sstream>
#include <stdexcept>

namespace negamoran {

ProbVector::ProbVector(std::vector<Rational> p) : p_(std::move(p)) {
  if (p_.size() < 2) throw std::invalid_argument("probability vector needs at least two entries");
  Rational total = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    p_[i].canonicalize();
    if (p_[i] <= 0) {
      throw std::invalid_argument("p_" + std::to_string(i) + " = " + negamoran::to_string(p_[i]) +
                                  " is not strictly positive");
    }
    beta_.push_back(total);
    total += p_[i];
  }
  if (total != 1) {
    throw std::invalid_argument("probabilities sum to " + negamoran::to_string(total) + ", not 1");
  }
}

ProbVector ProbVector::uniform(int base) {
  return ProbVector(std::vector<Rational>(static_cast<std::size_t>(base), Rational(1, base)));
}

ProbVector ProbVector::parse(std::string_view text, int base) {
  std::string t(text);
  if (t == "uniform") return uniform(base);
  std::vector<std::string> tokens;
  std::stringstream ss(t);
  for (std::string tok; std::getline(ss, tok, ',');) tokens.push_back(tok);
  std::vector<Rational> values;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].find("...") != std::string::npos) {
      if (i == 0 || i + 1 >= tokens.size()) throw std::invalid_argument("'...' needs values on both sides");
      const Rational before = parse_rational(tokens[i - 1]);
      if (before != parse_rational(tokens[i + 1])) {
        throw std::invalid_argument("'...' only fills a constant run");
      }
      const std::size_t remaining = tokens.size() - i - 1;
      if (values.size() + remaining > static_cast<std::size_t>(base)) {
        throw std::invalid_argument("too many probabilities for base " + std::to_string(base));
      }
      values.resize(static_cast<std::size_t>(base) - remaining, before);
      continue;
    }
    values.push_back(parse_rational(tokens[i]));
  }
  if (values.size() != static_cast<std::size_t>(base)) {
    throw std::invalid_argument("expected " + std::to_string(base) + " probabilities, got " +
                                std::to_string(values.size()));
  }
  return ProbVector(std::move(values));
}

const Rational& ProbVector::p_tilde(int d, std::size_t n) const { return n % 2 == 1 ? p(d) : p(mirror(d)); }
const Rational& ProbVector::beta_tilde(int d, std::size_t n) const {
  return n % 2 == 1 ? beta(d) : beta(mirror(d));
}
const Rational& ProbVector::p_ddot(int d, std::size_t n) const { return n % 2 == 0 ? p(d) : p(mirror(d)); }
const Rational& ProbVector::beta_ddot(int d, std::size_t n) const {
  return n % 2 == 0 ? beta(d) : beta(mirror(d));
}

Rational ProbVector::delta_tilde(int d, std::size_t n) const {
  if (n % 2 == 1) return d == 0 ? Rational(0) : beta(d);
  Rational sum = 0;
  for (int i = mirror(d); i < size(); ++i) sum += p(i);
  return sum;
}

bool ProbVector::is_uniform() const {
  for (const auto& v : p_) {
    if (v != p_.front()) return false;
  }
  return true;
}

std::string ProbVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (i) out += ',';
    out += negamoran::to_string(p_[i]);
  }
  return out;
}

namespace {

void check_word(const ProbVector& P, const DigitSeq& d) { d.validate(P.size()); }

auto p_map(const ProbVector& P) {
  return [&P](std::size_t, int d) { return detail::Affine{P.beta(d), P.p(d)}; };
}

// Per-position map of the alternating series: at position n the term
// (-1)^{n-1} delta_tilde, plus the product term that the third sum adds at
// every even n.
auto negp_map(const ProbVector& P) {
  return [&P](std::size_t n, int d) {
    Rational offset = P.delta_tilde(d, n);
    if (n % 2 == 0) offset = 1 - offset;
    return detail::Affine{offset, P.p_tilde(d, n)};
  };
}

}  // namespace

Rational eval_P(const ProbVector& P, const DigitSeq& digits) {
  check_word(P, digits);
  return detail::evaluate_word(digits, p_map(P));
}

Rational eval_negP(const ProbVector& P, const DigitSeq& digits) {
  check_word(P, digits);
  return detail::evaluate_word(digits, negp_map(P));
}

Rational eval_negP_via_complement(const ProbVector& P, const DigitSeq& digits) {
  check_word(P, digits);
  return eval_P(P, complement_even(P.size(), digits));
}

Rational eval_P_partial_sum(const ProbVector& P, const DigitSeq& digits, std::size_t terms) {
  check_word(P, digits);
  return detail::partial_sum(digits, terms, p_map(P));
}

Rational eval_negP_partial_sum(const ProbVector& P, const DigitSeq& digits, std::size_t terms) {
  check_word(P, digits);
  // Three sums exactly as written: the leading beta, the alternating
  // delta-tilde series, and the odd-length products of p-tilde.
  Rational first = terms == 0 ? Rational(0) : P.delta_tilde(digits.at(1), 1);
  Rational alternating = 0;
  Rational products = 0;
  Rational weight = 1;  // product of p_tilde over positions < n
  for (std::size_t n = 1; n <= terms; ++n) {
    if (n >= 2) {
      const Rational term = P.delta_tilde(digits.at(n), n) * weight;
      if (n % 2 == 0) {
        alternating -= term;
      } else {
        alternating += term;
      }
    }
    if (n % 2 == 0) products += weight;  // prod_{j=1}^{n-1}, n-1 odd
    weight *= P.p_tilde(digits.at(n), n);
  }
  Rational value = first + alternating + products;
  value.canonicalize();
  return value;
}

Rational negP_tail_bound(const ProbVector& P, const DigitSeq& digits, std::size_t terms) {
  Rational w = 1;
  for (std::size_t n = 1; n <= terms; ++n) w *= P.p_tilde(digits.at(n), n);
  return w;
}

Rational eval_F_tilde(const ProbVector& P, const DigitSeq& alpha) {
  check_word(P, alpha);
  return detail::evaluate_word(alpha, [&P](std::size_t n, int d) {
    return detail::Affine{P.beta_tilde(d, n), P.p_tilde(d, n)};
  });
}

Rational eval_F_ddot(const ProbVector& P, const DigitSeq& alpha) {
  check_word(P, alpha);
  return detail::evaluate_word(alpha, [&P](std::size_t n, int d) {
    return detail::Affine{P.beta_ddot(d, n), P.p_ddot(d, n)};
  });
}

Rational f_tilde_argument(int base, const DigitSeq& alpha) {
  const DigitSeq x = complement_even(base, alpha);
  return detail::evaluate_word(x, [base](std::size_t, int d) {
    return detail::Affine{Rational(d) / base, Rational(1, base)};
  });
}

Rational f_ddot_argument(int base, const DigitSeq& alpha) {
  const DigitSeq x = complement_odd(base, alpha);
  return detail::evaluate_word(x, [base](std::size_t, int d) {
    return detail::Affine{Rational(d) / base, Rational(1, base)};
  });
}

Rational eval_f_zeta(const ProbVector& P, const DigitSeq& digits) {
  check_word(P, digits);
  Rational value = 0;
  Rational weight = 1;
  // Statement of the distribution function: finite head, then the periodic
  // tail through its own fixed point.
  const DigitSeq aligned = digits.parity_aligned();
  for (int d : aligned.prefix()) {
    value += weight * P.beta(d);
    weight *= P.p(d);
  }
  Rational cycle_value = 0;
  Rational cycle_weight = 1;
  for (int d : aligned.period()) {
    cycle_value += cycle_weight * P.beta(d);
    cycle_weight *= P.p(d);
  }
  value += weight * cycle_value / (1 - cycle_weight);
  value.canonicalize();
  return value;
}

DigitSeq extract_P_digits(const ProbVector& P, const Rational& x, std::size_t count) {
  if (x < 0 || x > 1) throw std::invalid_argument("x = " + to_string(x) + " is outside [0, 1]");
  std::vector<int> digits;
  digits.reserve(count);
  Rational r = x;
  for (std::size_t i = 0; i < count; ++i) {
    int chosen = 0;
    if (r > 0) {
      // unique a with beta_a < r <= beta_a + p_a
      chosen = P.size() - 1;
      for (int a = 0; a < P.size(); ++a) {
        if (r <= P.beta(a) + P.p(a)) {
          chosen = a;
          break;
        }
      }
    }
    digits.push_back(chosen);
    r = (r - P.beta(chosen)) / P.p(chosen);
    r.canonicalize();
  }
  return DigitSeq(std::move(digits));
}

}  // namespace negamoran
