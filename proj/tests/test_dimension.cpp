#include "negamoran/dimension.hpp"
#include "negamoran/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace negamoran;

namespace {

ProbVector dyadic4() { return ProbVector::parse("1/2,1/4,1/8,1/8", 4); }

std::vector<std::vector<int>> bases_of_rank(const std::vector<int>& alphabet, int rank) {
  std::vector<std::vector<int>> out{{}};
  for (int r = 0; r < rank; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& b : out) {
      for (int c : alphabet) {
        auto x = b;
        x.push_back(c);
        next.push_back(x);
      }
    }
    out = next;
  }
  return out;
}

std::vector<Interval> cantor(int rank) {
  std::vector<Interval> out{{0, 1}};
  for (int r = 0; r < rank; ++r) {
    std::vector<Interval> next;
    for (const auto& iv : out) {
      const Rational third = iv.length() / 3;
      next.push_back({iv.lo, iv.lo + third});
      next.push_back({iv.hi - third, iv.hi});
    }
    out = next;
  }
  return out;
}

}  // namespace

TEST(MoranEquation, KnownRoots) {
  EXPECT_NEAR(solve_moran_eq2({0.5, 0.5}), 1.0, 1e-12);
  EXPECT_NEAR(solve_moran_eq2({1.0 / 3, 1.0 / 3}), std::log(2.0) / std::log(3.0), 1e-12);
  EXPECT_EQ(solve_moran_eq2({0.25}), 0.0);
  EXPECT_THROW(solve_moran_eq2({}), std::invalid_argument);
  EXPECT_THROW(solve_moran_eq2({0.5, 1.0}), std::invalid_argument);
  const std::vector<double> r{0.3, 0.2, 0.1};
  EXPECT_LT(std::abs(moran_eq2_residual(r, solve_moran_eq2(r))), 1e-12);
}

// Frozen from bisection in extended precision.
TEST(ClosedForms, SAdicRatioRoots) {
  EXPECT_NEAR(dim_theorem5(SystemParams(4, 0)), 0.43957321080331907, 1e-10);
  EXPECT_NEAR(dim_theorem5(SystemParams(4, 1)), 0.20284261568791231, 1e-10);
}

TEST(ClosedForms, DroppingADigitLowersTheRoot) {
  for (int s = 4; s <= 8; ++s) {
    for (int u = 0; u < s; ++u) {
      std::vector<double> r = theorem5_ratios(SystemParams(s, u));
      const double full = solve_moran_eq2(r);
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::vector<double> fewer = r;
        fewer.erase(fewer.begin() + static_cast<long>(i));
        EXPECT_LT(solve_moran_eq2(fewer), full);
      }
    }
  }
}

TEST(ClosedForms, ProbabilityRatioRoots) {
  EXPECT_NEAR(dim_theorem7(SystemParams(4, 0), dyadic4()), 0.4649584172162091, 1e-10);
  for (int s = 4; s <= 7; ++s) {
    for (int u = 0; u < s; ++u) {
      const SystemParams params(s, u);
      EXPECT_NEAR(dim_theorem7(params, ProbVector::uniform(s)), dim_theorem5(params), 1e-12);
    }
  }
}

TEST(ParityCounts, MatchTabulatedForms) {
  for (auto [l, m] : {std::pair<long, long>{1, 2}, {2, 2}, {2, 3}}) {
    for (int step = 1; step <= 4; ++step) {
      EXPECT_EQ(parity_counts(l, m, step).family, tabulated_step_counts(l, m, step))
          << "l=" << l << " m=" << m << " step=" << step;
    }
  }
  const SystemParams params(6, 1);
  const ParityCounts c = parity_counts(params, 3);
  EXPECT_EQ(c.l, 2);
  EXPECT_EQ(c.m, 2);
  for (const BigInt& n : c.family) EXPECT_EQ(n, 16);
}

TEST(ParityCounts, MatchEnumeration) {
  const SystemParams params(6, 2);
  for (int n = 1; n <= 4; ++n) {
    std::array<BigInt, 4> family{0, 0, 0, 0};
    BigInt even = 0;
    for (const auto& base : bases_of_rank(params.restricted_alphabet(), n)) {
      int before = 0;
      for (std::size_t i = 0; i + 1 < base.size(); ++i) before += base[i];
      const bool parent_odd = before % 2 == 1;
      const bool child_odd = base.back() % 2 == 1;
      const int j = child_odd ? (parent_odd ? 1 : 2) : (parent_odd ? 3 : 4);
      family[static_cast<std::size_t>(j - 1)] += 1;
      if ((before + base.back()) % 2 == 0) even += 1;
    }
    const ParityCounts c = parity_counts(params, n);
    EXPECT_EQ(c.family, family);
    EXPECT_EQ(c.even, even);
    const BigInt total = c.even + c.odd;
    EXPECT_EQ(total, c.family[0] + c.family[1] + c.family[2] + c.family[3]);
    BigInt diff = 1;
    for (int i = 0; i < n; ++i) diff *= (c.m - c.l);
    EXPECT_EQ(c.even - c.odd, diff);
  }
}

TEST(Omega, MatchesChildRatios) {
  const RestrictedCylinders g(SystemParams(5, 2), ProbVector::parse("1/3,1/6,1/4,1/8,1/8", 5));
  EXPECT_DOUBLE_EQ(omega(g, 2, 3), to_double(g.child_ratio({4}, 3)));
  EXPECT_DOUBLE_EQ(omega(g, 1, 1), to_double(g.child_ratio({3}, 1)));
  EXPECT_DOUBLE_EQ(omega(g, 4, 4), to_double(g.child_ratio({}, 4)));
  EXPECT_DOUBLE_EQ(omega(g, 3, 4), to_double(g.child_ratio({1}, 4)));
  EXPECT_THROW(omega(g, 2, 4), std::invalid_argument);
}

TEST(Transfer, MatchesBruteForce) {
  Rng rng(5);
  const SystemParams params(5, 2);
  const RestrictedCylinders g(params, random_prob_vector(rng, 5));
  const ParityChain chain(g);
  const double d0 = to_double(g.diameter({}));
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= 20; ++i) {
      const double alpha = i / 20.0;
      double brute = 0;
      for (const auto& base : bases_of_rank(params.restricted_alphabet(), k)) {
        brute += std::pow(to_double(g.diameter(base)) / d0, alpha);
      }
      EXPECT_NEAR(chain.power_sum(k, alpha), brute, 1e-12);
    }
  }
}

TEST(Trace, UniformIsFlat) {
  for (auto [s, u] : {std::pair<int, int>{4, 0}, {5, 2}, {6, 5}}) {
    const SystemParams params(s, u);
    const RestrictedCylinders g(params, ProbVector::uniform(s));
    const DimensionTrace t = dimension_trace(g, 20, 5, false);
    for (double a : t.alphas) EXPECT_NEAR(a, dim_theorem5(params), 1e-10);
    EXPECT_NEAR(t.spectral_root, dim_theorem5(params), 1e-10);
  }
}

TEST(Trace, NonUniformConverges) {
  Rng rng(77);
  for (int u : {0, 2, 5}) {
    const RestrictedCylinders g(SystemParams(6, u), random_prob_vector(rng, 6));
    const DimensionTrace t = dimension_trace(g, 40, 10, false);
    for (std::size_t k = 10; k < t.alphas.size(); ++k) {
      EXPECT_LE(std::abs(t.alphas[k] - t.alphas[k - 1]), 1e-3);
    }
    for (double r : t.residuals) EXPECT_LE(std::abs(r), 1e-10);
    EXPECT_NEAR(t.alphas.back(), t.spectral_root, 1e-2);
    EXPECT_LE(t.liminf_est, t.limsup_est);
    EXPECT_TRUE(t.flags.lower_positive);
    EXPECT_TRUE(t.flags.upper_below_one);
    EXPECT_TRUE(t.flags.bounded_branching);
  }
}

TEST(Trace, LiteralProductAtRankOne) {
  const SystemParams params(4, 0);
  const RestrictedCylinders g(params, ProbVector::uniform(4));
  EXPECT_NEAR(alpha_k_product(g, 1).alpha, dim_theorem5(params), 1e-9);
  // Absolute counts make the literal product grow without bound.
  EXPECT_FALSE(alpha_k_product(g, 20).in_unit_interval);
}

TEST(BoxCount, CantorSet) {
  const auto iv = cantor(10);
  const BoxCount b = boxcount_estimate(iv, default_box_scales(iv));
  EXPECT_NEAR(b.slope, std::log(2.0) / std::log(3.0), 0.05);
}

TEST(BoxCount, RestrictedCover) {
  const SystemParams params(4, 0);
  const RestrictedCylinders g(params, ProbVector::uniform(4));
  const BoxCount b = boxcount_estimate(build_cover(g, 8));
  EXPECT_NEAR(b.slope, dim_theorem5(params), 0.05);
}

TEST(BoxCount, AffineInvariance) {
  const auto iv = cantor(10);
  std::vector<Interval> moved;
  const Rational a(3, 7);
  const Rational shift(1, 5);
  for (const auto& x : iv) moved.push_back({a * x.lo + shift, a * x.hi + shift});
  const double s0 = boxcount_estimate(iv, default_box_scales(iv)).slope;
  const double s1 = boxcount_estimate(moved, default_box_scales(moved)).slope;
  EXPECT_NEAR(s0, s1, 0.02);
}
