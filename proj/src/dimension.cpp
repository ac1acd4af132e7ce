#include "negamoran/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace negamoran {

namespace {

// Root of a strictly decreasing f with f(0) >= 0: bisection on [0, B],
// doubling B until f(B) < 0.
double decreasing_root(const std::function<double(double)>& f) {
  double lo = 0;
  double hi = 1;
  int doublings = 0;
  while (f(hi) > 0) {
    lo = hi;
    hi *= 2;
    if (++doublings > 40) throw std::runtime_error("root not bracketed");
  }
  if (f(lo) < 0) return lo;
  for (int i = 0; i < 200 && hi - lo > kRootTolerance * 1e-2; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double ratio_sum(const std::vector<double>& ratios, double alpha) {
  double sum = 0;
  for (double r : ratios) sum += std::pow(r, alpha);
  return sum;
}

}  // namespace

double solve_moran_eq2(const std::vector<double>& ratios) {
  if (ratios.empty()) throw std::invalid_argument("no ratios");
  for (double r : ratios) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("ratios must lie in (0, 1)");
  }
  if (ratios.size() == 1) return 0;
  return decreasing_root([&](double a) { return ratio_sum(ratios, a) - 1; });
}

double moran_eq2_residual(const std::vector<double>& ratios, double alpha) {
  return ratio_sum(ratios, alpha) - 1;
}

std::vector<double> theorem5_ratios(const SystemParams& params) {
  std::vector<double> out;
  for (int c : params.restricted_alphabet()) {
    out.push_back(to_double(pow(Rational(1, params.base()), static_cast<unsigned>(c))));
  }
  return out;
}

double dim_theorem5(const SystemParams& params) { return solve_moran_eq2(theorem5_ratios(params)); }

std::vector<double> theorem7_ratios(const SystemParams& params, const ProbVector& P) {
  if (P.size() != params.base()) throw std::invalid_argument("probability vector length does not match base");
  std::vector<double> out;
  for (int c : params.restricted_alphabet()) {
    out.push_back(to_double(P.p(c) * pow(P.p(params.run_digit()), static_cast<unsigned>(c - 1))));
  }
  return out;
}

double dim_theorem7(const SystemParams& params, const ProbVector& P) {
  return solve_moran_eq2(theorem7_ratios(params, P));
}

BigInt ParityCounts::per_digit(int j, int c) const {
  const bool odd_digit = c % 2 == 1;
  switch (j) {
    case 1: return odd_digit ? odd_before : BigInt(0);
    case 2: return odd_digit ? even_before : BigInt(0);
    case 3: return odd_digit ? BigInt(0) : odd_before;
    case 4: return odd_digit ? BigInt(0) : even_before;
    default: throw std::invalid_argument("class index must be 1..4");
  }
}

ParityCounts parity_counts(long l, long m, int n) {
  if (n < 1) throw std::invalid_argument("step must be at least 1");
  ParityCounts out;
  out.n = n;
  out.l = l;
  out.m = m;
  BigInt even = 1;
  BigInt odd = 0;
  for (int i = 1; i <= n; ++i) {
    out.even_before = even;
    out.odd_before = odd;
    // Odd digits flip the parity, even digits keep it.
    const BigInt next_even = even * m + odd * l;
    const BigInt next_odd = even * l + odd * m;
    even = next_even;
    odd = next_odd;
  }
  out.even = even;
  out.odd = odd;
  out.family = {l * out.odd_before, l * out.even_before, m * out.odd_before, m * out.even_before};
  return out;
}

ParityCounts parity_counts(const SystemParams& params, int n) {
  return parity_counts(params.odd_count(), params.even_count(), n);
}

std::array<BigInt, 4> tabulated_step_counts(long l_, long m_, int step) {
  const BigInt l = l_;
  const BigInt m = m_;
  switch (step) {
    case 1: return {BigInt(0), l, BigInt(0), m};
    case 2: return {l * l, l * m, l * m, m * m};
    case 3: return {2 * l * l * m, l * (l * l + m * m), 2 * l * m * m, m * (l * l + m * m)};
    case 4:
      return {l * l * l * l + 3 * l * l * m * m, l * m * m * m + 3 * l * l * l * m,
              l * l * l * m + 3 * l * m * m * m, m * m * m * m + 3 * l * l * m * m};
    default: throw std::invalid_argument("tabulated counts exist for steps 1 to 4");
  }
}

double omega(const RestrictedCylinders& geometry, int j, int c) {
  if (j < 1 || j > 4) throw std::invalid_argument("class index must be 1..4");
  const bool odd_child = j <= 2;
  if ((c % 2 == 1) != odd_child) throw std::invalid_argument("digit parity does not match the class");
  const Parity parent = (j == 1 || j == 3) ? Parity::Odd : Parity::Even;
  return to_double(geometry.child_ratio_closed_form(parent, c));
}

ParityChain::ParityChain(const RestrictedCylinders& geometry) {
  for (int from = 0; from < 2; ++from) {
    for (int c : geometry.params().restricted_alphabet()) {
      const Parity parent = from == 0 ? Parity::Even : Parity::Odd;
      const int to = c % 2 == 0 ? from : 1 - from;
      steps_.push_back({from, to, to_double(geometry.child_ratio_closed_form(parent, c))});
    }
  }
}

std::array<std::array<double, 2>, 2> ParityChain::matrix(double alpha) const {
  std::array<std::array<double, 2>, 2> m{};
  for (const Step& st : steps_) m[st.from][st.to] += std::pow(st.ratio, alpha);
  return m;
}

double ParityChain::power_sum(int k, double alpha) const {
  const auto m = matrix(alpha);
  // Row vector starting in the even state (empty prefix has digit sum 0).
  double e = 1;
  double o = 0;
  for (int i = 0; i < k; ++i) {
    const double ne = e * m[0][0] + o * m[1][0];
    const double no = e * m[0][1] + o * m[1][1];
    e = ne;
    o = no;
  }
  return e + o;
}

double ParityChain::spectral_radius(double alpha) const {
  const auto m = matrix(alpha);
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = std::max(0.0, tr * tr / 4 - det);
  return tr / 2 + std::sqrt(disc);
}

double ParityChain::spectral_root() const {
  return decreasing_root([&](double a) { return spectral_radius(a) - 1; });
}

double ParityChain::min_ratio() const {
  double r = 1;
  for (const Step& st : steps_) r = std::min(r, st.ratio);
  return r;
}

double ParityChain::max_ratio() const {
  double r = 0;
  for (const Step& st : steps_) r = std::max(r, st.ratio);
  return r;
}

AlphaResult alpha_k_transfer(const ParityChain& chain, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  // Compare in log space so large k does not overflow near alpha = 0.
  auto f = [&](double a) { return std::log(chain.power_sum(k, a)); };
  AlphaResult out;
  out.alpha = decreasing_root(f);
  out.residual = chain.power_sum(k, out.alpha) - 1;
  out.in_unit_interval = out.alpha > 0 && out.alpha <= 1;
  return out;
}

double alpha_k_product_log_lhs(const RestrictedCylinders& geometry, int k, double alpha) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const auto& alphabet = geometry.params().restricted_alphabet();
  double log_lhs = 0;
  for (int i = 1; i <= k; ++i) {
    double factor = 0;
    if (i == 1) {
      for (int c : alphabet) factor += std::pow(omega(geometry, c % 2 == 1 ? 2 : 4, c), alpha);
    } else {
      const ParityCounts counts = parity_counts(geometry.params(), i);
      for (int c : alphabet) {
        for (int j : (c % 2 == 1) ? std::array<int, 2>{1, 2} : std::array<int, 2>{3, 4}) {
          const double n = counts.per_digit(j, c).get_d();
          if (n > 0) factor += n * std::pow(omega(geometry, j, c), alpha);
        }
      }
    }
    log_lhs += std::log(factor);
  }
  return log_lhs;
}

AlphaResult alpha_k_product(const RestrictedCylinders& geometry, int k) {
  AlphaResult out;
  out.alpha = decreasing_root([&](double a) { return alpha_k_product_log_lhs(geometry, k, a); });
  out.residual = std::expm1(alpha_k_product_log_lhs(geometry, k, out.alpha));
  out.in_unit_interval = out.alpha > 0 && out.alpha <= 1;
  return out;
}

DimensionTrace dimension_trace(const RestrictedCylinders& geometry, int k_max, int window, bool with_product) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  if (window < 1 || window > k_max) throw std::invalid_argument("window must lie in 1..k_max");
  const ParityChain chain(geometry);
  DimensionTrace trace;
  for (int k = 1; k <= k_max; ++k) {
    const AlphaResult r = alpha_k_transfer(chain, k);
    trace.alphas.push_back(r.alpha);
    trace.residuals.push_back(r.residual);
    if (with_product) trace.product_alphas.push_back(alpha_k_product(geometry, k));
  }
  const auto tail_begin = trace.alphas.end() - window;
  trace.liminf_est = *std::min_element(tail_begin, trace.alphas.end());
  trace.limsup_est = *std::max_element(tail_begin, trace.alphas.end());
  trace.spectral_root = chain.spectral_root();
  HypothesisFlags& f = trace.flags;
  f.c_lower = chain.min_ratio();
  f.c_upper = chain.max_ratio();
  f.branching = static_cast<int>(geometry.params().restricted_alphabet().size());
  f.lower_positive = f.c_lower > 0;
  f.upper_below_one = f.c_upper < 1;
  f.bounded_branching = f.branching >= 2 && f.branching < geometry.params().base();
  return trace;
}

std::vector<Interval> cover_intervals(const Cover& cover) {
  std::vector<Interval> out;
  out.reserve(cover.cells.size());
  for (const auto& cell : cover.cells) out.push_back(cell.interval);
  return out;
}

std::vector<Rational> default_box_scales(const std::vector<Interval>& intervals) {
  if (intervals.empty()) throw std::invalid_argument("no intervals");
  const Rational span = intervals.back().hi - intervals.front().lo;
  Rational longest = 0;
  for (const auto& iv : intervals) longest = std::max(longest, iv.length());
  std::vector<Rational> scales;
  Rational eps = 1;
  while (eps > span / 4) eps /= 2;
  for (; eps >= longest; eps /= 2) scales.push_back(eps);
  return scales;
}

BoxCount boxcount_estimate(const std::vector<Interval>& intervals, const std::vector<Rational>& scales) {
  if (scales.size() < 2) throw std::invalid_argument("box counting needs at least two scales");
  BoxCount out;
  out.scales = scales;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const Rational& eps : scales) {
    if (eps <= 0) throw std::invalid_argument("scales must be positive");
    long count = 0;
    bool have_last = false;
    BigInt last;
    for (const auto& iv : intervals) {
      BigInt first;
      BigInt final_box;
      const Rational a = iv.lo / eps;
      const Rational b = iv.hi / eps;
      mpz_fdiv_q(first.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      mpz_fdiv_q(final_box.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
      if (have_last && first <= last) first = last + 1;
      if (final_box >= first) {
        const BigInt added = final_box - first + 1;
        count += added.get_si();
      }
      if (!have_last || final_box > last) last = final_box;
      have_last = true;
    }
    out.counts.push_back(count);
    xs.push_back(-log_of(eps));
    ys.push_back(std::log(static_cast<double>(count)));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  out.slope = sxy / sxx;
  double sse = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - my - out.slope * (xs[i] - mx);
    sse += r * r;
  }
  out.stderr_ = xs.size() > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  const double decades = (xs.back() - xs.front()) / std::log(10.0);
  if (std::fabs(decades) < 2) {
    out.warning = "scaling window spans " + std::to_string(std::fabs(decades)) + " decades (under 2)";
  }
  return out;
}

BoxCount boxcount_estimate(const Cover& cover) {
  const auto intervals = cover_intervals(cover);
  return boxcount_estimate(intervals, default_box_scales(intervals));
}

}  // namespace negamoran
