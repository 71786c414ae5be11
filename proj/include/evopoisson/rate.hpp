#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace evopoisson {

/// Reduced fraction num/den with den > 0.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction make(std::int64_t num, std::int64_t den);
  /// Parses a plain decimal literal ("0.05", "5.1", "3") exactly.
  static Fraction parse_decimal(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) = default;
};

/// A positive rate, either an exact rational or a plain double.
///
/// Rates that are exact on every axis allow the propagation predicate to be
/// decided in integer arithmetic, so boundary points never flip with rounding.
class Rate {
 public:
  Rate() = default;
  static Rate exact(std::int64_t num, std::int64_t den) { return Rate(Fraction::make(num, den)); }
  static Rate exact(Fraction f) { return Rate(f); }
  static Rate approx(double v) { return Rate(v); }

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Fraction>& fraction() const { return exact_; }

  /// Ratio of two rates; exact when both operands are.
  friend Rate operator/(const Rate& a, const Rate& b);

 private:
  explicit Rate(Fraction f) : value_(f.value()), exact_(f) {}
  explicit Rate(double v) : value_(v) {}

  double value_ = 1.0;
  std::optional<Fraction> exact_;
};

}  // namespace evopoisson
