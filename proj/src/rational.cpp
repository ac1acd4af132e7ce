#include "negamoran/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace negamoran {

namespace {

bool is_integer_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  const std::string num = t.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + t + "'");
  }
  BigInt n(num[0] == '+' ? num.substr(1) : num, 10);
  BigInt d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + t + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int significant) {
  if (significant < 1) significant = 1;
  if (value == 0) return "0";
  const bool negative = value < 0;
  Rational mag = abs(value);

  // Find e with 10^(e-1) <= mag < 10^e.
  long e = static_cast<long>(std::floor(log_of(mag) / std::log(10.0))) + 1;
  auto ten_pow = [](long k) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return Rational(k < 0 ? BigInt(1) : r, k < 0 ? r : BigInt(1));
  };
  while (mag >= ten_pow(e)) ++e;
  while (mag < ten_pow(e - 1)) --e;

  // digits = round(mag * 10^(significant - e))
  Rational scaled = mag * ten_pow(significant - e);
  BigInt digits = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string ds = digits.get_str();
  if (static_cast<int>(ds.size()) > significant) {  // rounding carried into a new digit
    ++e;
    ds.pop_back();
  }

  std::string out = negative ? "-" : "";
  if (e > 21 || e < -5) {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += (e - 1 < 0 ? "e-" : "e+") + std::to_string(std::labs(e - 1));
    return out;
  }
  if (e <= 0) {
    out += "0." + std::string(static_cast<std::size_t>(-e), '0') + ds;
  } else if (static_cast<std::size_t>(e) >= ds.size()) {
    out += ds + std::string(static_cast<std::size_t>(e) - ds.size(), '0');
  } else {
    out += ds.substr(0, static_cast<std::size_t>(e)) + "." + ds.substr(static_cast<std::size_t>(e));
  }
  // strip trailing zeros of the fractional part
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

double to_double(const Rational& value) {
  const double d = value.get_d();
  if (d != 0.0 || value == 0) return d;
  return std::exp(log_of(abs(value))) * (value < 0 ? -1.0 : 1.0);
}

double log_of(const Rational& value) {
  if (value <= 0) throw std::domain_error("log of non-positive rational");
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, value.get_num_mpz_t());
  const double md = mpz_get_d_2exp(&ed, value.get_den_mpz_t());
  return std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
}

}  // namespace negamoran
