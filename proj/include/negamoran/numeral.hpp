#pragma once

#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"

#include <utility>

namespace negamoran {

/// Sum of d_n / s^n, exact. Periodic tails are summed in closed form.
Rational eval_s_adic(int base, const DigitSeq& digits);

/// Sum of d_n / (-s)^n, exact. The value lies in [-s/(s+1), 1/(s+1)].
Rational eval_nega_s_adic(int base, const DigitSeq& digits);

/// (nega-s-adic value of d, 1/(s+1) - s-adic value of the even-complemented
/// word). The two components are always equal.
std::pair<Rational, Rational> nega_identity_check(int base, const DigitSeq& digits);

/// Second form of the identity: s-adic value of the odd-position complement
/// minus s/(s+1).
Rational nega_via_shifted_complement(int base, const DigitSeq& digits);

}  // namespace negamoran
