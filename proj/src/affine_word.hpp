#pragma once

// Exact evaluation of series of the form
//   offset_1 + scale_1 * (offset_2 + scale_2 * (offset_3 + ...))
// over an eventually periodic digit word, where each position contributes an
// affine map chosen from its digit and position.

#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"

#include <stdexcept>

namespace negamoran::detail {

struct Affine {
  Rational offset = 0;
  Rational scale = 1;
};

// outer ∘ inner
inline Affine compose(const Affine& outer, const Affine& inner) {
  return Affine{outer.offset + outer.scale * inner.offset, outer.scale * inner.scale};
}

// MapAt: (std::size_t position, int digit) -> Affine. The word is parity
// aligned first, so position-parity dependent maps repeat with the period.
template <typename MapAt>
Rational evaluate_word(const DigitSeq& word, MapAt&& map_at) {
  const DigitSeq aligned = word.parity_aligned();
  std::size_t pos = 1;
  Affine head;
  for (int d : aligned.prefix()) head = compose(head, map_at(pos++, d));
  Affine cycle;
  for (int d : aligned.period()) cycle = compose(cycle, map_at(pos++, d));
  if (abs(cycle.scale) >= 1) throw std::domain_error("periodic tail does not contract");
  const Rational tail = cycle.offset / (1 - cycle.scale);
  Rational value = head.offset + head.scale * tail;
  value.canonicalize();
  return value;
}

// Sum of the first `terms` positions only (tail dropped).
template <typename MapAt>
Rational partial_sum(const DigitSeq& word, std::size_t terms, MapAt&& map_at) {
  Rational value = 0;
  Rational weight = 1;
  for (std::size_t pos = 1; pos <= terms; ++pos) {
    const Affine a = map_at(pos, word.at(pos));
    value += weight * a.offset;
    weight *= a.scale;
  }
  value.canonicalize();
  return value;
}

}  // namespace negamoran::detail
