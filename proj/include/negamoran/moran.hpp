#pragma once

// Rank-n covers of S(-P,u), their Lebesgue measure, and the extrema of the
// tail-set families.

#include "negamoran/cylinders.hpp"
#include "negamoran/digits.hpp"
#include "negamoran/rational.hpp"
#include "negamoran/salem.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace negamoran {

struct CoverCell {
  std::vector<int> base;
  Interval interval;
};

struct Cover {
  int rank = 0;
  std::vector<CoverCell> cells;  // sorted by lo, pairwise disjoint
  Rational total_length;
};

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::uint64_t required, std::uint64_t cap);
  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

inline constexpr std::uint64_t kDefaultCap = 1'000'000;

/// |Abar|^rank, saturating at UINT64_MAX.
std::uint64_t cover_size(const SystemParams& params, int rank);

/// All rank-n cylinders, built in parallel over the first block and sorted
/// by left endpoint. Throws CapExceeded when there are more than `cap`, and
/// std::logic_error if two cells are not strictly separated.
Cover build_cover(const RestrictedCylinders& geometry, int rank, std::uint64_t cap = kDefaultCap);

struct MeasureRow {
  int n = 0;
  Rational measure;  // total length of the rank-n cover
  Rational bound;    // max(lambda(I_over), lambda(I_under)) * V^n
  Rational weighted_sum;  // the same measure from parity-class weights
};

struct MeasureReport {
  Rational lambda_over;   // diameter of the even-complemented tail set
  Rational lambda_under;  // diameter of the odd-complemented tail set
  Rational v_even;        // sum over blocks of the block scale, even state
  Rational v_odd;
  Rational V;             // max(v_even, v_odd)
  std::vector<MeasureRow> rows;
};

MeasureReport measure_sequence(const RestrictedCylinders& geometry, int n_max, std::uint64_t cap = kDefaultCap);

enum class ExtremaFamily {
  SPuOver,   // even-complemented tail set; equals S(-P,u)
  SPuUnder,  // odd-complemented tail set
  SNegPu,
  SNegSu,    // S(-s,u), nega-s-adic values
  SPu,       // plain S(P,u); no closed-form words, solver only
};

const char* to_string(ExtremaFamily family);
ExtremaFamily parse_extrema_family(std::string_view text);

struct SetExtrema {
  Rational lo;
  Rational hi;
  std::string source;  // case selected from the tables, or "solver"
  BlockSeq lo_witness;
  BlockSeq hi_witness;
  // Values of the tabulated periodic digit words, when tabulated.
  std::optional<DigitSeq> table_lo_word;
  std::optional<DigitSeq> table_hi_word;
  std::optional<Rational> table_lo;
  std::optional<Rational> table_hi;
  bool table_matches() const;
};

/// Exact extrema from the tail-set solver, together with the tabulated
/// closed-form words evaluated independently. A table/solver mismatch is
/// reported through table_matches(), never hidden.
SetExtrema set_extrema(const TailSets& tails, ExtremaFamily family);

/// Language acceptor of the run-block sets.
Membership digit_membership(const SystemParams& params, const DigitSeq& digits);

/// Columns: rank,base,lo_num,lo_den,hi_num,hi_den,decimal_lo,decimal_hi.
std::string cover_to_csv(const Cover& cover, int precision);
std::string cover_to_json(const Cover& cover, int precision);

}  // namespace negamoran
