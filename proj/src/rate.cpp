#include "evopoisson/rate.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <string>

#include "evopoisson/errors.hpp"

namespace evopoisson {
namespace {

using Wide = __int128;

std::int64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw InvalidParameter("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Fraction reduce(Wide num, Wide den) {
  if (den == 0) throw InvalidParameter("fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide g = wide_gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{narrow(num), narrow(den)};
}

}  // namespace

Fraction Fraction::make(std::int64_t num, std::int64_t den) { return reduce(num, den); }

Fraction Fraction::parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  Wide num = 0;
  Wide den = 1;
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(ch))) break;
    any_digit = true;
    num = num * 10 + (ch - '0');
    if (seen_point) den *= 10;
    if (num > (Wide{1} << 100) || den > (Wide{1} << 100)) {
      throw InvalidParameter("decimal literal too long: " + std::string(text));
    }
  }
  if (!any_digit) throw InvalidParameter("not a decimal number: '" + std::string(text) + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg_exp = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      neg_exp = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    bool exp_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      exponent = exponent * 10 + (text[i] - '0');
      exp_digit = true;
      if (exponent > 30) throw InvalidParameter("decimal exponent out of range: " + std::string(text));
    }
    if (!exp_digit) throw InvalidParameter("not a decimal number: '" + std::string(text) + "'");
    for (int k = 0; k < exponent; ++k) (neg_exp ? den : num) *= 10;
  }
  if (i != text.size()) throw InvalidParameter("not a decimal number: '" + std::string(text) + "'");
  return reduce(negative ? -num : num, den);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return reduce(Wide{a.num} * b.den + Wide{b.num} * a.den, Wide{a.den} * b.den);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return reduce(Wide{a.num} * b.den - Wide{b.num} * a.den, Wide{a.den} * b.den);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return reduce(Wide{a.num} * b.num, Wide{a.den} * b.den);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num == 0) throw InvalidParameter("division by zero fraction");
  return reduce(Wide{a.num} * b.den, Wide{a.den} * b.num);
}

Rate operator/(const Rate& a, const Rate& b) {
  if (a.is_exact() && b.is_exact()) return Rate::exact(*a.fraction() / *b.fraction());
  return Rate::approx(a.value() / b.value());
}

}  // namespace evopoisson
