#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace moralswf {

// Exact arbitrary-precision rational, always stored in lowest terms with a
// positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  // Accepts integers ("-3"), fractions ("99/100") and finite decimals
  // ("0.99", "-.5"). Throws Error(NumberFormat) on anything else.
  static Rational parse(std::string_view text);

  // "n" when the denominator is 1, otherwise "n/d".
  std::string str() const;
  std::string numeratorStr() const;
  std::string denominatorStr() const;
  bool numeratorFitsInt64() const;
  bool denominatorFitsInt64() const;
  std::int64_t numeratorInt64() const;
  std::int64_t denominatorInt64() const;

  // Approximate value, for display only.
  double toDouble() const;

  int sign() const { return sgn(value_); }
  bool isZero() const { return sign() == 0; }
  Rational abs() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) <=> 0;
  }

 private:
  explicit Rational(mpq_class value);

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace moralswf
