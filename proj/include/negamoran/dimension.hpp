#pragma once

// Hausdorff dimension: Moran root equations, parity counts, the pre-dimension
// sequence alpha_k of S(-P,u), and a box-counting estimator.

#include "negamoran/cylinders.hpp"
#include "negamoran/digits.hpp"
#include "negamoran/moran.hpp"
#include "negamoran/rational.hpp"
#include "negamoran/salem.hpp"

#include <array>
#include <string>
#include <vector>

namespace negamoran {

inline constexpr double kRootTolerance = 1e-12;

/// Root of sum(ratio^alpha) = 1. Every ratio must lie in (0, 1); a single
/// ratio gives 0.
double solve_moran_eq2(const std::vector<double>& ratios);
double moran_eq2_residual(const std::vector<double>& ratios, double alpha);

/// Ratios s^-c over Abar.
std::vector<double> theorem5_ratios(const SystemParams& params);
double dim_theorem5(const SystemParams& params);

/// Ratios p_c * p_u^(c-1) over Abar.
std::vector<double> theorem7_ratios(const SystemParams& params, const ProbVector& P);
double dim_theorem7(const SystemParams& params, const ProbVector& P);

/// Block tuples of length n counted by digit-sum parity, and the four
/// parent-parity / child-digit-parity classes of their last step:
///   1: parent odd, child odd     2: parent even, child odd
///   3: parent odd, child even    4: parent even, child even
struct ParityCounts {
  int n = 0;
  long l = 0;
  long m = 0;
  BigInt even;  // E_n
  BigInt odd;   // O_n
  BigInt even_before;  // E_{n-1}
  BigInt odd_before;   // O_{n-1}
  std::array<BigInt, 4> family;  // N_1..N_4 summed over digits

  /// Count for one class and one child digit (zero when the digit parity
  /// does not fit the class). j in 1..4.
  BigInt per_digit(int j, int c) const;
};

ParityCounts parity_counts(const SystemParams& params, int n);
ParityCounts parity_counts(long l, long m, int n);

/// Closed forms of N_1..N_4 for steps 1 to 4, as polynomials in l and m.
std::array<BigInt, 4> tabulated_step_counts(long l, long m, int step);

/// Ratio d(child)/d(parent) per class j in 1..4 and child digit c.
double omega(const RestrictedCylinders& geometry, int j, int c);

/// Two-state chain over digit-sum parity. Entry [from][to] of M(alpha) sums
/// child_ratio^alpha over the blocks moving parity `from` to `to`
/// (index 0 = even, 1 = odd).
class ParityChain {
 public:
  explicit ParityChain(const RestrictedCylinders& geometry);

  std::array<std::array<double, 2>, 2> matrix(double alpha) const;
  /// Sum over rank-k cylinders of (d(cylinder)/d(S(-P,u)))^alpha.
  double power_sum(int k, double alpha) const;
  double spectral_radius(double alpha) const;
  /// Root of spectral_radius(alpha) = 1; the limit of alpha_k.
  double spectral_root() const;

  double min_ratio() const;
  double max_ratio() const;

 private:
  struct Step {
    int from;
    int to;
    double ratio;
  };
  std::vector<Step> steps_;
};

struct AlphaResult {
  double alpha = 0;
  double residual = 0;
  bool in_unit_interval = true;
};

/// Root of the normalized rank-k sum of diameter^alpha = 1.
AlphaResult alpha_k_transfer(const ParityChain& chain, int k);

/// Root of the literal k-fold product with absolute per-digit counts,
/// evaluated in log space. May leave (0, 1]; see in_unit_interval.
AlphaResult alpha_k_product(const RestrictedCylinders& geometry, int k);
double alpha_k_product_log_lhs(const RestrictedCylinders& geometry, int k, double alpha);

struct HypothesisFlags {
  double c_lower = 0;  // smallest child ratio
  double c_upper = 0;  // largest child ratio
  int branching = 0;
  bool lower_positive = false;
  bool upper_below_one = false;
  bool bounded_branching = false;
};

struct DimensionTrace {
  std::vector<double> alphas;
  std::vector<double> residuals;
  std::vector<AlphaResult> product_alphas;
  double liminf_est = 0;
  double limsup_est = 0;
  double spectral_root = 0;
  HypothesisFlags flags;
};

DimensionTrace dimension_trace(const RestrictedCylinders& geometry, int k_max = 40, int window = 10,
                               bool with_product = true);

struct BoxCount {
  std::vector<Rational> scales;
  std::vector<long> counts;
  double slope = 0;
  double stderr_ = 0;
  std::string warning;  // set when the scale window spans under two decades
};

/// Dyadic scales 2^-j from a quarter of the span down to the longest interval.
std::vector<Rational> default_box_scales(const std::vector<Interval>& intervals);
/// Intervals must be sorted by lo and disjoint.
BoxCount boxcount_estimate(const std::vector<Interval>& intervals, const std::vector<Rational>& scales);
BoxCount boxcount_estimate(const Cover& cover);

std::vector<Interval> cover_intervals(const Cover& cover);

}  // namespace negamoran
