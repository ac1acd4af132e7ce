#pragma once

// Extrema of the tail sets that appear inside restricted cylinders.
//
// A tail word is a run-block word evaluated in the P-representation after
// complementing either nothing, its even positions, or its odd positions.
// Reading one block c maps the tail value affinely and, when c is odd,
// swaps the even/odd convention for the remainder. The infimum and supremum
// over all infinite block sequences therefore satisfy a two-state
// optimality equation, solved here exactly by policy iteration.

#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"
#include "negamoran/salem.hpp"

#include <array>

namespace negamoran {

enum class TailConvention {
  Plain,           // S(P,u): no complement
  ComplementEven,  // the "over" set; the whole of S(-P,u) when started at position 1
  ComplementOdd,   // the "under" set
};

const char* to_string(TailConvention convention);

/// value(c followed by tail) = offset + scale * value(tail in state `next`).
struct BlockMap {
  Rational offset;
  Rational scale;
  TailConvention next;
};

BlockMap block_map(const SystemParams& params, const ProbVector& P, TailConvention state, int c);

struct TailExtremum {
  Rational value;
  BlockSeq witness;  // an eventually periodic block sequence attaining `value`
};

struct TailHull {
  TailExtremum inf;
  TailExtremum sup;
  Rational diameter() const { return sup.value - inf.value; }
};

class TailSets {
 public:
  TailSets(const SystemParams& params, const ProbVector& P);

  const TailHull& hull(TailConvention convention) const;

  const SystemParams& params() const { return params_; }
  const ProbVector& probabilities() const { return P_; }

 private:
  SystemParams params_;
  ProbVector P_;
  std::array<TailHull, 3> hulls_;
};

}  // namespace negamoran
