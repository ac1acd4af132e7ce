#include "negamoran/numeral.hpp"

#include "affine_word.hpp"

namespace negamoran {

Rational eval_s_adic(int base, const DigitSeq& digits) {
  digits.validate(base);
  const Rational inv(1, base);
  return detail::evaluate_word(digits, [&](std::size_t, int d) {
    return detail::Affine{Rational(d) / base, inv};
  });
}

Rational eval_nega_s_adic(int base, const DigitSeq& digits) {
  digits.validate(base);
  const Rational inv(-1, base);
  return detail::evaluate_word(digits, [&](std::size_t, int d) {
    return detail::Affine{Rational(-d, base), inv};
  });
}

std::pair<Rational, Rational> nega_identity_check(int base, const DigitSeq& digits) {
  return {eval_nega_s_adic(base, digits),
          Rational(1, base + 1) - eval_s_adic(base, complement_even(base, digits))};
}

Rational nega_via_shifted_complement(int base, const DigitSeq& digits) {
  // The odd positions carry the negative sign; complementing them adds
  // sum over odd n of (s-1)/s^n = s/(s+1).
  return eval_s_adic(base, complement_odd(base, digits)) - Rational(base, base + 1);
}

}  // namespace negamoran
