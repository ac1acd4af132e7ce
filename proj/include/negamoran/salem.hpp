#pragma once

#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace negamoran {

/// Probability vector p_0..p_{s-1} (all strictly positive, summing to one)
/// with its cumulative sums beta_k = p_0 + ... + p_{k-1}.
///
/// The position-dependent accessors take 1-indexed positions:
///   p_tilde(d, n)  = p_d at odd n, p_{s-1-d} at even n (beta_tilde alike);
///   p_ddot(d, n)   = the opposite convention, so p_ddot(d, n+1) == p_tilde(d, n);
///   delta_tilde(d, n) = beta_d at odd n, p_{s-1-d} + ... + p_{s-1} at even n.
class ProbVector {
 public:
  explicit ProbVector(std::vector<Rational> p);

  static ProbVector uniform(int base);

  /// "uniform", a comma list of rationals ("1/2,1/4,1/8,1/8"), or a constant
  /// fill written "1/6,...,1/6". The result must have exactly `base` entries.
  static ProbVector parse(std::string_view text, int base);

  int size() const { return static_cast<int>(p_.size()); }
  const Rational& p(int d) const { return p_.at(static_cast<std::size_t>(d)); }
  const Rational& beta(int d) const { return beta_.at(static_cast<std::size_t>(d)); }

  const Rational& p_tilde(int d, std::size_t position) const;
  const Rational& beta_tilde(int d, std::size_t position) const;
  const Rational& p_ddot(int d, std::size_t position) const;
  const Rational& beta_ddot(int d, std::size_t position) const;
  Rational delta_tilde(int d, std::size_t position) const;

  bool is_uniform() const;
  const std::vector<Rational>& values() const { return p_; }
  std::string to_string() const;

  bool operator==(const ProbVector& other) const { return p_ == other.p_; }

 private:
  int mirror(int d) const { return size() - 1 - d; }

  std::vector<Rational> p_;
  std::vector<Rational> beta_;
};

/// P-representation value beta_{a1} + sum_{n>=2} beta_{a_n} p_{a_1}...p_{a_{n-1}}.
Rational eval_P(const ProbVector& P, const DigitSeq& digits);

/// Nega-P-representation value, summing the alternating delta-tilde series
/// in closed form.
Rational eval_negP(const ProbVector& P, const DigitSeq& digits);

/// eval_P of the even-complemented word; equal to eval_negP for every word.
Rational eval_negP_via_complement(const ProbVector& P, const DigitSeq& digits);

/// Literal partial sums over the first `terms` positions.
Rational eval_P_partial_sum(const ProbVector& P, const DigitSeq& digits, std::size_t terms);
Rational eval_negP_partial_sum(const ProbVector& P, const DigitSeq& digits, std::size_t terms);

/// p_tilde product over the first `terms` positions; bounds the distance
/// between eval_negP and its partial sum.
Rational negP_tail_bound(const ProbVector& P, const DigitSeq& digits, std::size_t terms);

/// Salem-type distribution function with the odd/even parity twist
/// (beta_tilde, p_tilde). The word is the digit word alpha of the argument,
/// whose real value is x = s-adic value of alpha_1 [s-1-alpha_2] alpha_3 ...
/// (see f_tilde_argument). Strictly increasing in that x.
Rational eval_F_tilde(const ProbVector& P, const DigitSeq& alpha);

/// Same with the opposite parity twist (beta_ddot, p_ddot); its argument is
/// the s-adic value of the odd-complemented word (see f_ddot_argument).
Rational eval_F_ddot(const ProbVector& P, const DigitSeq& alpha);

Rational f_tilde_argument(int base, const DigitSeq& alpha);
Rational f_ddot_argument(int base, const DigitSeq& alpha);

/// Distribution function of the random s-adic digit series; the word is the
/// s-adic word of the argument. Coincides with eval_P digit for digit.
Rational eval_f_zeta(const ProbVector& P, const DigitSeq& digits);

/// First `count` P-digits of x in [0, 1], greedy. At a cylinder boundary the
/// smaller digit is chosen, so P-rational points get their (s-1)-tailed word.
DigitSeq extract_P_digits(const ProbVector& P, const Rational& x, std::size_t count);

}  // namespace negamoran
