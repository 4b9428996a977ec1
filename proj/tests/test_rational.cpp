#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "moralswf/rational.hpp"

using moralswf::ErrorCode;
using moralswf::Rational;

TEST(Rational, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("-3"), Rational(-3));
  EXPECT_EQ(Rational::parse("99/100"), Rational(99, 100));
  EXPECT_EQ(Rational::parse("0.99"), Rational(99, 100));
  EXPECT_EQ(Rational::parse("-.5"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-10000"), Rational(-10000));
}

TEST(Rational, RejectsMalformedNumbers) {
  for (const char* bad : {"", "1e5", "+1", "1/0", "abc", "1.2.3", "1/", "/2", "- 1", "0x10", "1/-2"}) {
    EXPECT_EQ(fixtures::codeOf([&] { Rational::parse(bad); }), ErrorCode::NumberFormat) << bad;
  }
}

TEST(Rational, PrintsLowestTerms) {
  EXPECT_EQ(Rational(-10099, 100).str(), "-10099/100");
  EXPECT_EQ(Rational(-1198, 100).str(), "-599/50");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational(3, -6).str(), "-1/2");
  EXPECT_EQ(Rational().str(), "0");
}

TEST(Rational, DivisionByZeroThrows) {
  EXPECT_THROW(Rational(1) / Rational(0), moralswf::Error);
  EXPECT_THROW(Rational(1, 0), moralswf::Error);
}

TEST(Rational, BigValuesStayExact) {
  Rational big(1);
  for (int i = 0; i < 10; ++i) big *= Rational(1000000007);
  EXPECT_FALSE(big.numeratorFitsInt64());
  EXPECT_EQ(big / big, Rational(1));
  EXPECT_EQ(Rational::parse(big.str()), big);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 50);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (!b.isZero()) EXPECT_EQ(a / b * b, a);
    EXPECT_EQ(Rational::parse(a.str()), a);
    EXPECT_EQ(a < b, (a - b).sign() < 0);
    EXPECT_GE(a.abs(), Rational(0));
  }
}
