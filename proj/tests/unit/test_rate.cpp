#include <doctest.h>

#include <limits>

#include "evopoisson/errors.hpp"
#include "evopoisson/rate.hpp"

using namespace evopoisson;

TEST_CASE("fractions reduce and keep a positive denominator") {
  const Fraction f = Fraction::make(6, -4);
  CHECK(f.num == -3);
  CHECK(f.den == 2);
  CHECK_THROWS_AS(Fraction::make(1, 0), InvalidParameter);
}

TEST_CASE("decimal parsing is exact") {
  CHECK(Fraction::parse_decimal("0.05") == Fraction::make(1, 20));
  CHECK(Fraction::parse_decimal("5.1") == Fraction::make(51, 10));
  CHECK(Fraction::parse_decimal("3") == Fraction::make(3, 1));
  CHECK(Fraction::parse_decimal("-0.25") == Fraction::make(-1, 4));
  CHECK(Fraction::parse_decimal("2e-3") == Fraction::make(1, 500));
  CHECK_THROWS(Fraction::parse_decimal("abc"));
  CHECK_THROWS(Fraction::parse_decimal(""));
  CHECK_THROWS(Fraction::parse_decimal("1.2.3"));
}

TEST_CASE("fraction arithmetic") {
  const Fraction a = Fraction::make(1, 3);
  const Fraction b = Fraction::make(1, 6);
  CHECK(a + b == Fraction::make(1, 2));
  CHECK(a - b == Fraction::make(1, 6));
  CHECK(a * b == Fraction::make(1, 18));
  CHECK(a / b == Fraction::make(2, 1));
  CHECK_THROWS(a / Fraction::make(0, 1));
  const Fraction big = Fraction::make(std::numeric_limits<std::int64_t>::max(), 1);
  CHECK_THROWS(big * big);
}

TEST_CASE("rate ratios stay exact only when both sides are exact") {
  const Rate tau = Rate::exact(5, 1) / Rate::exact(51, 10);
  REQUIRE(tau.is_exact());
  CHECK(*tau.fraction() == Fraction::make(50, 51));
  CHECK(tau.value() == doctest::Approx(0.98039215686));
  const Rate mixed = Rate::exact(5, 1) / Rate::approx(10.0);
  CHECK_FALSE(mixed.is_exact());
  CHECK(mixed.value() == doctest::Approx(0.5));
}
