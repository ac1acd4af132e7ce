#pragma once

// The invariant suite behind `negamoran verify`, plus the random samplers it
// and the tests share. Everything is deterministic given the seed.

#include "negamoran/digits.hpp"
#include "negamoran/salem.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace negamoran {

using Rng = std::mt19937_64;

/// Uniform draw in [lo, hi]. Plain modulo keeps results identical across
/// standard libraries, unlike std::uniform_int_distribution.
int draw(Rng& rng, int lo, int hi);

DigitSeq random_digit_word(Rng& rng, int base, int max_prefix, int max_period);
DigitSeq random_terminating_word(Rng& rng, int base, int max_length);
BlockSeq random_block_word(Rng& rng, const SystemParams& params, int max_prefix, int max_period);
/// Weights 1..9 normalized; never uniform unless by chance.
ProbVector random_prob_vector(Rng& rng, int base);

/// Two words of one P-rational point: prefix c 0 0 ... and prefix (c-1) (s-1) (s-1) ...
std::pair<DigitSeq, DigitSeq> dual_pair_P(int base, const std::vector<int>& prefix, int c);
/// Two words of one nega-P-rational point: the even-complements of a P pair.
std::pair<DigitSeq, DigitSeq> dual_pair_negP(int base, const std::vector<int>& prefix, int c);

struct VerifyConfig {
  int base = 6;
  int run_digit = 2;
  std::string P = "uniform";
  std::uint64_t seed = 1;
  int samples = 200;
  int max_rank = 3;
  int k_max = 14;
};

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  bool informational = false;  // reported but not part of the exit status
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

VerifyReport run_verify(const VerifyConfig& config);

}  // namespace negamoran
