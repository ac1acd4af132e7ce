// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "commands.hpp"
#include "negamoran/cylinders.hpp"
#include "negamoran/dimension.hpp"
#include "negamoran/moran.hpp"
#include "negamoran/numeral.hpp"
#include "negamoran/salem.hpp"
#include "negamoran/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace negamoran;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

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

int digit_sum(const std::vector<int>& base) {
  int s = 0;
  for (int c : base) s += c;
  return s;
}

BigInt power(long b, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// 1. Representation identities.
Outcome ac1() {
  Outcome o;
  const auto t0 = Clock::now();
  Rng rng(101);
  long words = 0;
  for (auto [s, u] : {std::pair<int, int>{4, 0}, {5, 2}, {6, 5}}) {
    const SystemParams params(s, u);
    const std::vector<ProbVector> vectors{random_prob_vector(rng, s), random_prob_vector(rng, s)};
    for (const ProbVector& P : vectors) {
      for (int i = 0; i < 1000; ++i) {
        // Alternate between run-block words of the configuration and free digit words.
        const DigitSeq d = i % 2 == 0 ? expand_blocks(params, random_block_word(rng, params, 6, 4))
                                      : random_digit_word(rng, s, 10, 5);
        const DigitSeq e = complement_even(s, d);
        if (eval_negP(P, d) != eval_P(P, e)) o.fail("negP != P o complement_even at " + format_digits(d, s));
        if (eval_nega_s_adic(s, d) != Rational(1, s + 1) - eval_s_adic(s, e)) {
          o.fail("nega-s identity fails at " + format_digits(d, s));
        }
        ++words;
      }
    }
  }
  const double t = seconds_since(t0);
  if (t >= 10) o.fail("runtime " + std::to_string(t) + " s");
  if (o.ok) o.detail = std::to_string(words) + " words, " + std::to_string(t) + " s";
  return o;
}

// 2. Partial sums of the nega-P series against the closed form.
Outcome ac2() {
  Outcome o;
  Rng rng(202);
  const ProbVector P = ProbVector::parse("1/3,1/6,1/4,1/8,1/8", 5);
  for (int i = 0; i < 100; ++i) {
    const DigitSeq d = random_digit_word(rng, 5, 8, 5);
    Rational diff = eval_negP_partial_sum(P, d, 200) - eval_negP(P, d);
    if (diff < 0) diff = -diff;
    if (diff > negP_tail_bound(P, d, 200)) o.fail("outside tail bound at " + format_digits(d, 5));
  }
  if (o.ok) o.detail = "100 words, 200 terms";
  return o;
}

// 3. Cylinder formulas, exhaustive rank <= 3 at s = 5, u = 2.
Outcome ac3() {
  Outcome o;
  long checked = 0;
  for (const ProbVector& P : {ProbVector::uniform(5), ProbVector::parse("1/3,1/6,1/4,1/8,1/8", 5)}) {
    const RestrictedCylinders g(SystemParams(5, 2), P);
    for (int rank = 0; rank <= 3; ++rank) {
      for (const auto& base : bases_of_rank({1, 3, 4}, rank)) {
        const Interval iv = g.interval(base);
        if (iv != g.interval_by_extremal_words(base)) o.fail("endpoints differ at rank " + std::to_string(rank));
        if (iv.length() != g.diameter(base)) o.fail("diameter differs");
        if (rank < 3) {
          for (int c : {1, 3, 4}) {
            auto child = base;
            child.push_back(c);
            if (g.child_ratio(base, c) * g.diameter(base) != g.diameter(child)) o.fail("child ratio");
          }
        }
        ++checked;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " cylinders";
  return o;
}

// 4. Separation in all three regimes, plus sibling adjacency.
Outcome ac4() {
  Outcome o;
  Rng rng(404);
  long gaps = 0;
  for (int u : {0, 2, 5}) {
    const SystemParams params(6, u);
    for (const ProbVector& P : {ProbVector::uniform(6), random_prob_vector(rng, 6)}) {
      const RestrictedCylinders g(params, P);
      for (int rank = 0; rank <= 1; ++rank) {
        for (const auto& base : bases_of_rank(params.restricted_alphabet(), rank)) {
          for (int c : params.restricted_alphabet()) {
            if (!params.admissible(c + 1)) continue;
            const SeparationReport r = separation_check(g, base, c);
            if (!r.holds()) o.fail("u=" + std::to_string(u) + " c=" + std::to_string(c) + " " + to_string(r.regime));
            ++gaps;
          }
        }
      }
    }
  }
  long pairs = 0;
  for (int s : {4, 5, 6}) {
    const ProbVector P = random_prob_vector(rng, s);
    std::vector<int> digits;
    for (int d = 0; d < s; ++d) digits.push_back(d);
    for (int rank = 0; rank <= 2; ++rank) {
      for (const auto& base : bases_of_rank(digits, rank)) {
        for (int c = 0; c + 1 < s; ++c) {
          if (!adjacency_check_P(P, base, c)) o.fail("P adjacency");
          if (!adjacency_check_negP(P, base, c)) o.fail("negP adjacency");
          ++pairs;
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(gaps) + " gaps, " + std::to_string(pairs) + " adjacent pairs";
  return o;
}

// 5. Cover measure decays geometrically.
Outcome ac5() {
  Outcome o;
  struct Config {
    int s, u;
    const char* P;
  };
  for (const Config& c : {Config{5, 2, "uniform"}, Config{6, 1, "1/12,1/6,1/4,1/6,1/4,1/12"}}) {
    const RestrictedCylinders g(SystemParams(c.s, c.u), ProbVector::parse(c.P, c.s));
    const MeasureReport r = measure_sequence(g, 6);
    if (!(r.V < 1)) o.fail("V >= 1");
    Rational prev = g.diameter({});
    for (const MeasureRow& row : r.rows) {
      if (!(row.measure < prev)) o.fail("not decreasing at n=" + std::to_string(row.n));
      if (row.measure > row.bound) o.fail("bound violated at n=" + std::to_string(row.n));
      prev = row.measure;
    }
  }
  if (o.ok) o.detail = "two configurations, n = 1..6";
  return o;
}

// 6. Parity counts.
Outcome ac6() {
  Outcome o;
  for (auto [l, m] : {std::pair<long, long>{1, 2}, {2, 2}, {2, 3}}) {
    for (int step = 1; step <= 4; ++step) {
      if (parity_counts(l, m, step).family != tabulated_step_counts(l, m, step)) o.fail("tabulated form");
    }
    for (int n = 1; n <= 10; ++n) {
      const ParityCounts c = parity_counts(l, m, n);
      if (c.family[0] + c.family[1] != l * power(l + m, n - 1)) o.fail("odd-child total");
      if (c.family[2] + c.family[3] != m * power(l + m, n - 1)) o.fail("even-child total");
    }
  }
  for (auto [s, u] : {std::pair<int, int>{4, 0}, {5, 2}, {6, 1}, {7, 4}}) {
    const SystemParams params(s, u);
    for (int n = 1; n <= 4; ++n) {
      std::array<BigInt, 4> family{0, 0, 0, 0};
      BigInt even = 0;
      for (const auto& base : bases_of_rank(params.restricted_alphabet(), n)) {
        const bool parent_odd = (digit_sum(base) - base.back()) % 2 == 1;
        const bool child_odd = base.back() % 2 == 1;
        family[child_odd ? (parent_odd ? 0 : 1) : (parent_odd ? 2 : 3)] += 1;
        if (digit_sum(base) % 2 == 0) even += 1;
      }
      const ParityCounts c = parity_counts(params, n);
      if (c.family != family || c.even != even) o.fail("enumeration at s=" + std::to_string(s));
    }
  }
  if (o.ok) o.detail = "three (l, m) pairs, enumeration n <= 4";
  return o;
}

// 7. Dimension cross-checks.
Outcome ac7() {
  Outcome o;
  const auto t0 = Clock::now();
  // (i) x + x^2 + x^3 = 1 by plain bisection, alpha = -log x / log 4.
  long double lo = 0, hi = 1;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    (mid + mid * mid + mid * mid * mid < 1 ? lo : hi) = mid;
  }
  const double bisect = static_cast<double>(-std::log(lo) / std::log(4.0L));
  if (std::abs(dim_theorem5(SystemParams(4, 0)) - bisect) > 1e-10) o.fail("(i) theorem 5 root");

  // (ii) uniform P: flat trace at the closed-form value.
  for (auto [s, u] : {std::pair<int, int>{4, 0}, {5, 2}, {6, 5}, {7, 3}}) {
    const SystemParams params(s, u);
    const double d5 = dim_theorem5(params);
    if (std::abs(dim_theorem7(params, ProbVector::uniform(s)) - d5) > 1e-10) o.fail("(ii) theorem 7");
    const DimensionTrace t = dimension_trace(RestrictedCylinders(params, ProbVector::uniform(s)), 30, 10, false);
    if (std::abs(t.liminf_est - d5) > 1e-10) o.fail("(ii) liminf");
    for (double a : t.alphas) {
      if (std::abs(a - d5) > 1e-10) o.fail("(ii) trace not flat");
    }
  }

  // (iii) transfer matrix against enumerated covers.
  Rng rng(707);
  for (const ProbVector& P : {ProbVector::uniform(5), random_prob_vector(rng, 5)}) {
    const SystemParams params(5, 2);
    const RestrictedCylinders g(params, P);
    const ParityChain chain(g);
    const double d0 = to_double(g.diameter({}));
    for (int k = 1; k <= 3; ++k) {
      const auto bases = bases_of_rank(params.restricted_alphabet(), k);
      for (int i = 1; i <= 20; ++i) {
        const double alpha = i / 20.0;
        double brute = 0;
        for (const auto& base : bases) brute += std::pow(to_double(g.diameter(base)) / d0, alpha);
        if (std::abs(chain.power_sum(k, alpha) - brute) > 1e-12) o.fail("(iii) transfer sum");
      }
    }
  }

  // (iv) box counting on the rank-8 cover.
  const SystemParams p40(4, 0);
  const BoxCount box = boxcount_estimate(build_cover(RestrictedCylinders(p40, ProbVector::uniform(4)), 8));
  if (std::abs(box.slope - dim_theorem5(p40)) > 0.05) o.fail("(iv) box count slope " + std::to_string(box.slope));

  const double t = seconds_since(t0);
  if (t >= 120) o.fail("runtime " + std::to_string(t) + " s");
  if (o.ok) {
    std::ostringstream s;
    s << "bisection " << bisect << ", box slope " << box.slope << ", " << t << " s";
    o.detail = s.str();
  }
  return o;
}

// 8. Salem-type function: monotone and consistent on dual pairs.
Outcome ac8() {
  Outcome o;
  Rng rng(808);
  const int s = 4;
  const ProbVector P = ProbVector::parse("1/2,1/4,1/8,1/8", s);
  struct Point {
    Rational arg;
    Rational value;
  };
  std::vector<Point> points;
  for (int i = 0; i < 10000; ++i) {
    const DigitSeq d = random_terminating_word(rng, s, 12);
    points.push_back({f_tilde_argument(s, d), eval_F_tilde(P, d)});
  }
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.arg < b.arg; });
  for (std::size_t i = 1; i < points.size(); ++i) {
    const bool same = points[i].arg == points[i - 1].arg;
    if (same ? points[i].value != points[i - 1].value : !(points[i].value > points[i - 1].value)) {
      o.fail("not strictly increasing");
    }
  }
  for (int i = 0; i < 1000; ++i) {
    std::vector<int> prefix(static_cast<std::size_t>(draw(rng, 0, 6)));
    for (int& d : prefix) d = draw(rng, 0, s - 1);
    const int c = draw(rng, 1, s - 1);
    const auto [a, b] = dual_pair_P(s, prefix, c);
    if (eval_P(P, a) != eval_P(P, b)) o.fail("P dual pair");
    const auto [x, y] = dual_pair_negP(s, prefix, c);
    if (eval_negP(P, x) != eval_negP(P, y)) o.fail("negP dual pair");
    if (eval_F_tilde(P, x) != eval_F_tilde(P, y)) o.fail("F-tilde dual pair");
  }
  if (o.ok) o.detail = "10000 sorted words, 1000 pairs of each kind";
  return o;
}

// 9. Determinism of the verify report.
Outcome ac9() {
  Outcome o;
  const std::vector<std::vector<std::string>> configs{
      {"negamoran", "verify"},
      {"negamoran", "--s", "6", "--u", "2", "verify"},
      {"negamoran", "--s", "5", "--u", "2", "--P", "1/3,1/6,1/4,1/8,1/8", "verify"},
      {"negamoran", "--format", "json", "verify"},
  };
  for (const auto& args : configs) {
    std::ostringstream a, b, err;
    const int ca = cli::run(args, a, err);
    const int cb = cli::run(args, b, err);
    if (ca != 0 || cb != 0) o.fail("exit code " + std::to_string(ca) + " for " + args.back());
    if (a.str() != b.str()) o.fail("reports differ");
  }
  if (o.ok) o.detail = std::to_string(configs.size()) + " configurations, identical bytes, exit 0";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 representation identities", ac1},
      {"AC2 series partial sums", ac2},
      {"AC3 cylinder formulas", ac3},
      {"AC4 separation and adjacency", ac4},
      {"AC5 measure zero", ac5},
      {"AC6 parity counts", ac6},
      {"AC7 dimension cross-checks", ac7},
      {"AC8 Salem-type function", ac8},
      {"AC9 determinism", ac9},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    failed += !o.ok;
  }
  std::cout << (9 - failed) << "/9 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
