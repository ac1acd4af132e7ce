#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace negamoran {

/// The pair (s, u): base s >= 4 and the run digit u in [0, s-1].
///
/// The restricted alphabet is Abar = {0..s-1} \ {0, u}; it has s-2 members
/// when u != 0 and s-1 members when u == 0.
class SystemParams {
 public:
  SystemParams(int base, int run_digit);

  int base() const { return base_; }
  int run_digit() const { return run_digit_; }

  /// Members of Abar in increasing order.
  const std::vector<int>& restricted_alphabet() const { return restricted_; }
  bool admissible(int c) const;

  int odd_count() const { return odd_count_; }    // l
  int even_count() const { return even_count_; }  // m

  bool operator==(const SystemParams&) const = default;

 private:
  int base_;
  int run_digit_;
  std::vector<int> restricted_;
  int odd_count_ = 0;
  int even_count_ = 0;
};

/// An eventually periodic digit word: prefix followed by `period` repeated
/// forever. An empty period means the word terminates; evaluators read it
/// as followed by an all-zero tail.
///
/// Positions are 1-indexed everywhere, so "even position" means 2, 4, ...
class DigitSeq {
 public:
  DigitSeq() = default;
  explicit DigitSeq(std::vector<int> prefix, std::vector<int> period = {});

  const std::vector<int>& prefix() const { return prefix_; }
  const std::vector<int>& period() const { return period_; }
  bool terminating() const { return period_.empty(); }

  /// Digit at 1-indexed `position` of the infinite word (zero tail included).
  int at(std::size_t position) const;

  /// Prefix followed by `period` padded to an even length (or (0,0) for a
  /// terminating word) so that every period repetition starts on the same
  /// position parity.
  DigitSeq parity_aligned() const;

  /// Shortest representation of the same infinite word: minimal period,
  /// prefix absorbed into the period, zero tails dropped.
  DigitSeq canonical() const;

  /// Throws std::invalid_argument unless every digit is in [0, base-1].
  void validate(int base) const;

  bool operator==(const DigitSeq&) const = default;

 private:
  std::vector<int> prefix_;
  std::vector<int> period_;
};

/// Same infinite word (compares canonical forms).
bool same_word(const DigitSeq& a, const DigitSeq& b);

/// Eventually periodic sequence of block values alpha_n in Abar. An empty
/// period means a finite block list.
struct BlockSeq {
  std::vector<int> prefix;
  std::vector<int> period;

  BlockSeq canonical() const;
  bool operator==(const BlockSeq&) const = default;
};

/// First position where a digit word leaves the run-block language.
class LanguageError : public std::invalid_argument {
 public:
  LanguageError(std::size_t index, const std::string& reason);
  /// 0-based offset into the unrolled word.
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Each alpha becomes (alpha-1) copies of u followed by alpha.
DigitSeq expand_blocks(const SystemParams& params, const BlockSeq& blocks);

/// Left inverse of expand_blocks. Throws LanguageError at the first digit that
/// cannot belong to a run-structured word.
BlockSeq contract_blocks(const SystemParams& params, const DigitSeq& digits);

struct Membership {
  bool accepted = false;
  std::optional<std::size_t> index;  // 0-based, set when rejected
  std::string reason;
};

Membership check_run_language(const SystemParams& params, const DigitSeq& digits);

enum class Parity { Odd, Even };

/// Replaces the digit at every position of the given parity by s-1-digit.
/// The result is canonical; the zero tail of a terminating word is
/// complemented too.
DigitSeq complement_positions(int base, const DigitSeq& digits, Parity which);

inline DigitSeq complement_even(int base, const DigitSeq& digits) {
  return complement_positions(base, digits, Parity::Even);
}
inline DigitSeq complement_odd(int base, const DigitSeq& digits) {
  return complement_positions(base, digits, Parity::Odd);
}

/// Text format: "113(12)" for base <= 10; for larger bases the digits are
/// comma separated, "1,11,3(1,12)". Throws std::invalid_argument with the
/// offending character offset on malformed text.
DigitSeq parse_digits(std::string_view text, int base);
std::string format_digits(const DigitSeq& digits, int base);
std::string format_blocks(const BlockSeq& blocks, int base);

}  // namespace negamoran
