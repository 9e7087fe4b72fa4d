#include <random>

#include <gtest/gtest.h>

#include "metext/scalar.hpp"

using metext::Scalar;

TEST(Scalar, ParsesIntegersAndFractions) {
  EXPECT_EQ(Scalar::parse("7"), Scalar(7));
  EXPECT_EQ(Scalar::parse("-3"), Scalar(-3));
  EXPECT_EQ(Scalar::parse("6/4"), Scalar(3, 2));
  EXPECT_EQ(Scalar::parse("6/4").str(), "3/2");
  EXPECT_EQ(Scalar::parse("-0/5").str(), "0");
}

TEST(Scalar, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1.5", "1/", "/2", "1/0", "a", "1/-2", "2/3/4", " 1"})
    EXPECT_THROW(Scalar::parse(bad), std::invalid_argument) << bad;
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(0), std::domain_error); }

TEST(Scalar, DecimalTruncates) {
  EXPECT_EQ(Scalar(1, 3).decimal(4), "0.3333");
  EXPECT_EQ(Scalar(-5, 2).decimal(2), "-2.50");
  EXPECT_EQ(Scalar(5).decimal(), "5.000000000000");
}

TEST(Scalar, PowAndAbs) {
  EXPECT_EQ(pow(Scalar(3), 2), Scalar(9));
  EXPECT_EQ(pow(Scalar(2, 3), 3), Scalar(8, 27));
  EXPECT_EQ(pow(Scalar(5), 0), Scalar(1));
  EXPECT_EQ(abs(Scalar(-7, 2)), Scalar(7, 2));
}

// Ordering and arithmetic agree with integer cross-multiplication.
TEST(Scalar, MatchesCrossMultiplicationOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  for (int k = 0; k < 1000; ++k) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Scalar x(a, b), y(c, d);
    EXPECT_EQ(x < y, a * d < c * b);
    EXPECT_EQ(x == y, a * d == c * b);
    EXPECT_EQ(x + y, Scalar(a * d + c * b, b * d));
    EXPECT_EQ(x * y, Scalar(a * c, b * d));
    EXPECT_EQ(x - y, Scalar(a * d - c * b, b * d));
  }
}
