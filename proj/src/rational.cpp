#include "moralswf/rational.hpp"

#include <cctype>
#include <limits>

#include "moralswf/error.hpp"

namespace moralswf {
namespace {

bool allDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void badNumber(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::NumberFormat,
              "invalid number '" + std::string(text) + "': " + std::string(why));
}

mpz_class toMpz(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

bool fitsInt64(const mpz_class& z) {
  static const mpz_class lo(std::to_string(std::numeric_limits<std::int64_t>::min()), 10);
  static const mpz_class hi(std::to_string(std::numeric_limits<std::int64_t>::max()), 10);
  return z >= lo && z <= hi;
}

std::int64_t toInt64(const mpz_class& z) {
  if (!fitsInt64(z)) {
    throw Error(ErrorCode::NumberFormat, "integer " + z.get_str() + " exceeds 64 bits");
  }
  return std::stoll(z.get_str());
}

}  // namespace

Rational::Rational(std::int64_t value) {
  value_ = mpq_class(mpz_class(std::to_string(value), 10));
}

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw Error(ErrorCode::NumberFormat, "zero denominator");
  value_ = mpq_class(mpz_class(std::to_string(numerator), 10),
                     mpz_class(std::to_string(denominator), 10));
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  if (body.empty()) badNumber(text, "empty");

  mpq_class q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash);
    std::string_view den = body.substr(slash + 1);
    if (!allDigits(num) || !allDigits(den)) badNumber(text, "expected n/d with decimal digits");
    mpz_class d = toMpz(den);
    if (d == 0) badNumber(text, "zero denominator");
    q = mpq_class(toMpz(num), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = body.substr(dot + 1);
    if (frac.empty() || !allDigits(frac) || (!whole.empty() && !allDigits(whole))) {
      badNumber(text, "expected a finite decimal");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits = toMpz(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    q = mpq_class(digits, scale);
  } else {
    if (!allDigits(body)) badNumber(text, "expected an integer, decimal or fraction");
    q = mpq_class(toMpz(body));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::numeratorStr() const { return value_.get_num().get_str(); }
std::string Rational::denominatorStr() const { return value_.get_den().get_str(); }
bool Rational::numeratorFitsInt64() const { return fitsInt64(value_.get_num()); }
bool Rational::denominatorFitsInt64() const { return fitsInt64(value_.get_den()); }
std::int64_t Rational::numeratorInt64() const { return toInt64(value_.get_num()); }
std::int64_t Rational::denominatorInt64() const { return toInt64(value_.get_den()); }

double Rational::toDouble() const { return value_.get_d(); }

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.isZero()) throw Error(ErrorCode::NumberFormat, "division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace moralswf
