#pragma once

// Interval geometry of P-, nega-P- and restricted (run-block) cylinders.

#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"
#include "negamoran/salem.hpp"
#include "negamoran/tail_sets.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace negamoran {

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Interval& inner) const { return lo <= inner.lo && inner.hi <= hi; }
  bool operator==(const Interval&) const = default;
};

enum class CylinderSystem { P, NegP, SPu, SNegPu };

const char* to_string(CylinderSystem system);
CylinderSystem parse_cylinder_system(std::string_view text);

/// "SnegPu:1,3,4", "P:2,1", "negP:" (empty base).
struct CylinderSpec {
  CylinderSystem system;
  std::vector<int> base;
};

CylinderSpec parse_cylinder_spec(std::string_view text);

/// Rank-m P-cylinder: [base then 0s, base then (s-1)s].
Interval cyl_interval_P(const ProbVector& P, const std::vector<int>& base);

/// Rank-m nega-P-cylinder; the extremal tails alternate (s-1)0 and 0(s-1)
/// depending on the parity of m.
Interval cyl_interval_negP(const ProbVector& P, const std::vector<int>& base);

/// Product of p_tilde(c_j, j); the diameter of a nega-P-cylinder.
Rational negP_diameter_product(const ProbVector& P, const std::vector<int>& base);

/// Restricted cylinders of S(-P,u) (bases over Abar) and, for comparison,
/// of S(P,u).
class RestrictedCylinders {
 public:
  RestrictedCylinders(const SystemParams& params, const ProbVector& P);

  const SystemParams& params() const { return tails_.params(); }
  const ProbVector& probabilities() const { return tails_.probabilities(); }
  const TailSets& tails() const { return tails_; }

  /// tau + W * [inf T, sup T] with T the over set for an even digit sum and
  /// the under set for an odd one.
  Interval interval(const std::vector<int>& base) const;
  Rational diameter(const std::vector<int>& base) const;

  /// P-value of the expanded prefix with its even positions complemented,
  /// followed by zeros.
  Rational prefix_offset(const std::vector<int>& base) const;
  /// p_tilde over the non-u digits at the partial-sum positions times p_tilde
  /// over the u positions in between.
  Rational prefix_weight(const std::vector<int>& base) const;

  /// Tail convention left after reading `base` from position 1.
  TailConvention tail_after(const std::vector<int>& base) const;

  /// Same interval by composing block maps; independent of the formula above.
  Interval interval_by_blocks(const std::vector<int>& base) const;

  /// Same interval again, by evaluating base followed by the extremal tail
  /// words directly with the nega-P evaluator.
  Interval interval_by_extremal_words(const std::vector<int>& base) const;

  /// d(base c) / d(base).
  Rational child_ratio(const std::vector<int>& base, int c) const;

  /// The same ratio from the digit-sum parity of the parent alone: the u-run
  /// product, p_c or p_{s-1-c}, and a tail diameter quotient when c is odd.
  Rational child_ratio_closed_form(Parity parent_sum, int c) const;

  /// Cylinder of S(P,u): plain P evaluation, no complement.
  Interval plain_interval(const std::vector<int>& base) const;

 private:
  std::vector<int> expanded(const std::vector<int>& base) const;

  TailSets tails_;
};

Interval cylinder_interval(const SystemParams& params, const ProbVector& P, const CylinderSpec& spec);

enum class SeparationRegime { LowRun, MiddleRun, HighRun };

const char* to_string(SeparationRegime regime);

struct SeparationReport {
  SeparationRegime regime;
  bool predicted_c_first;  // digit-c child predicted strictly left of digit-(c+1) child
  bool observed_c_first;
  Rational gap;  // distance between the two children; <= 0 means they touch or overlap
  bool holds() const { return gap > 0 && predicted_c_first == observed_c_first; }
};

/// Compares the children base+c and base+(c+1) of a restricted cylinder.
/// Both c and c+1 must be in Abar.
SeparationReport separation_check(const RestrictedCylinders& geometry, const std::vector<int>& base,
                                  int c);

/// Whether sup of base+c equals inf of base+(c+1), exactly.
bool adjacency_check_P(const ProbVector& P, const std::vector<int>& base, int c);
/// Nega version: at odd child rank digit c sits left of c+1, at even child
/// rank to its right.
bool adjacency_check_negP(const ProbVector& P, const std::vector<int>& base, int c);

/// Children of an unrestricted cylinder tile it: sorted, abutting, and
/// spanning exactly the parent.
bool children_tile_parent(const ProbVector& P, CylinderSystem system, const std::vector<int>& base);

}  // namespace negamoran
