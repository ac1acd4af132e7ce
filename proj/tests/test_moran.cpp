#include "negamoran/moran.hpp"
#include "negamoran/numeral.hpp"
#include "negamoran/verify.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace negamoran;

namespace {

ProbVector p5() { return ProbVector::parse("1/3,1/6,1/4,1/8,1/8", 5); }

}  // namespace

TEST(Cover, SizesAndNesting) {
  const RestrictedCylinders g(SystemParams(5, 2), ProbVector::uniform(5));
  const Cover c1 = build_cover(g, 1);
  const Cover c2 = build_cover(g, 2);
  ASSERT_EQ(c1.cells.size(), 3u);
  ASSERT_EQ(c2.cells.size(), 9u);
  for (const CoverCell& child : c2.cells) {
    int parents = 0;
    for (const CoverCell& parent : c1.cells) parents += parent.interval.contains(child.interval);
    EXPECT_EQ(parents, 1);
  }
  for (std::size_t i = 1; i < c2.cells.size(); ++i) {
    EXPECT_LT(c2.cells[i - 1].interval.hi, c2.cells[i].interval.lo);
  }
  EXPECT_EQ(cover_size(SystemParams(6, 2), 4), 256u);
}

TEST(Cover, TotalLengthDecreases) {
  for (const ProbVector& P : {ProbVector::uniform(5), p5()}) {
    const RestrictedCylinders g(SystemParams(5, 2), P);
    Rational prev = g.diameter({});
    for (int n = 1; n <= 6; ++n) {
      const Cover c = build_cover(g, n);
      EXPECT_LT(c.total_length, prev);
      prev = c.total_length;
    }
  }
}

TEST(Cover, CapIsEnforced) {
  const RestrictedCylinders g(SystemParams(6, 2), ProbVector::uniform(6));
  try {
    build_cover(g, 10, 1000);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.required(), 1048576u);
    EXPECT_EQ(e.cap(), 1000u);
  }
}

TEST(Measure, UniformFrozenValues) {
  const RestrictedCylinders g(SystemParams(5, 2), ProbVector::uniform(5));
  const MeasureReport r = measure_sequence(g, 6);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0].measure, Rational(1441, 32500));
  EXPECT_EQ(r.rows[1].measure, Rational(188771, 20312500));
  // Uniform weights: every step multiplies by the sum of 5^-c over {1,3,4}.
  EXPECT_EQ(r.V, Rational(131, 625));
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].measure / r.rows[i - 1].measure, Rational(131, 625));
  }
  EXPECT_LT(r.rows[5].measure, r.rows[0].measure / 100);
}

TEST(Measure, BoundAndWeightedSum) {
  Rng rng(8);
  for (int u : {0, 2, 4}) {
    for (const ProbVector& P : {p5(), random_prob_vector(rng, 5)}) {
      const RestrictedCylinders g(SystemParams(5, u), P);
      const MeasureReport r = measure_sequence(g, 5);
      EXPECT_LT(r.V, 1);
      EXPECT_EQ(r.V, std::max(r.v_even, r.v_odd));
      for (const MeasureRow& row : r.rows) {
        EXPECT_LE(row.measure, row.bound);
        EXPECT_EQ(row.measure, row.weighted_sum);
      }
    }
  }
}

TEST(Extrema, TablesAgreeAwayFromRunDigitTwo) {
  Rng rng(12);
  for (int u : {0, 1, 3, 4}) {
    const SystemParams params(5, u);
    for (const ProbVector& P : {ProbVector::uniform(5), random_prob_vector(rng, 5)}) {
      const TailSets t(params, P);
      for (auto f : {ExtremaFamily::SPuOver, ExtremaFamily::SPuUnder, ExtremaFamily::SNegPu,
                     ExtremaFamily::SNegSu}) {
        EXPECT_TRUE(set_extrema(t, f).table_matches()) << "u=" << u << " " << to_string(f);
      }
    }
  }
}

TEST(Extrema, RunDigitTwoTableMismatchIsReported) {
  const TailSets t(SystemParams(5, 2), p5());
  const SetExtrema over = set_extrema(t, ExtremaFamily::SPuOver);
  EXPECT_FALSE(over.table_matches());
  EXPECT_EQ(over.lo, Rational(254, 575));
  EXPECT_EQ(over.hi, Rational(694, 1023));
}

TEST(Extrema, TabulatedInfimumForLargeRunDigit) {
  const ProbVector P = p5();
  const SetExtrema e = set_extrema(TailSets(SystemParams(5, 3), P), ExtremaFamily::SPuUnder);
  EXPECT_EQ(e.lo, eval_P(P, DigitSeq({}, {1, 2})));
  const SetExtrema o = set_extrema(TailSets(SystemParams(5, 3), P), ExtremaFamily::SPuOver);
  EXPECT_EQ(o.lo, eval_P(P, DigitSeq({1}, {1, 2})));
}

TEST(Extrema, NegaSIsReflectedUniformNegaP) {
  for (int u : {0, 1, 3, 4}) {
    const TailSets uniform(SystemParams(5, u), ProbVector::uniform(5));
    const SetExtrema nega = set_extrema(uniform, ExtremaFamily::SNegSu);
    const SetExtrema over = set_extrema(uniform, ExtremaFamily::SPuOver);
    EXPECT_EQ(*nega.table_lo, Rational(1, 6) - *over.table_hi);
    EXPECT_EQ(*nega.table_hi, Rational(1, 6) - *over.table_lo);
  }
}

TEST(Extrema, MatchRankOneCoverEnds) {
  const RestrictedCylinders g(SystemParams(5, 2), p5());
  const Cover c = build_cover(g, 1);
  const SetExtrema e = set_extrema(g.tails(), ExtremaFamily::SNegPu);
  EXPECT_EQ(c.cells.front().interval.lo, e.lo);
  EXPECT_EQ(c.cells.back().interval.hi, e.hi);
}

TEST(Membership, RunLanguage) {
  const SystemParams params(5, 2);
  EXPECT_TRUE(digit_membership(params, parse_digits("1223(2224)", 5)).accepted);
  EXPECT_TRUE(digit_membership(params, DigitSeq({}, {2, 2, 2, 4})).accepted);
  const Membership bad = digit_membership(params, parse_digits("13", 5));
  EXPECT_FALSE(bad.accepted);
  ASSERT_TRUE(bad.index.has_value());
  EXPECT_EQ(*bad.index, 1u);
}

TEST(Export, CsvAndJson) {
  const RestrictedCylinders g(SystemParams(5, 2), ProbVector::uniform(5));
  const Cover c = build_cover(g, 1);
  const std::string csv = cover_to_csv(c, 10);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "rank,base,lo_num,lo_den,hi_num,hi_den,decimal_lo,decimal_hi");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const std::string json = cover_to_json(c, 10);
  EXPECT_NE(json.find("\"rank\""), std::string::npos);
}
