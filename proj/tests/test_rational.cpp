#include <gtest/gtest.h>

#include "rumor/pmf.hpp"
#include "rumor/polynomial.hpp"
#include "rumor/rational.hpp"

using namespace rumor;

TEST(Rational, AlwaysReduced) {
  const Rational r(-6, 8);
  EXPECT_EQ(numerator_of(r), -3);
  EXPECT_EQ(denominator_of(r), 4);
  EXPECT_EQ(to_fraction_string(r), "-3/4");
  EXPECT_EQ(to_fraction_string(Rational(10, 5)), "2");
}

TEST(Rational, FractionStringRoundTrip) {
  for (const Rational& r : {Rational(8, 9), Rational(0), Rational(-17, 3), Rational(BigInt("123456789012345678901234567890"), 7)}) {
    EXPECT_EQ(parse_fraction(to_fraction_string(r)), r);
  }
  EXPECT_THROW(parse_fraction("1/0"), InvalidArgument);
  EXPECT_THROW(parse_fraction("abc"), InvalidArgument);
}

TEST(Rational, FactorialAndBinomial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(51, 25), BigInt("247959266474052"));
  EXPECT_EQ(binomial(3, 4), 0);
}

TEST(ExactPmf, RejectsBrokenInput) {
  using E = ExactPmf::Entry;
  EXPECT_THROW(ExactPmf({E{0, Rational(1, 2)}, E{1, Rational(1, 3)}}), InvalidArgument);
  EXPECT_THROW(ExactPmf({E{1, Rational(1, 2)}, E{0, Rational(1, 2)}}), InvalidArgument);
  EXPECT_THROW(ExactPmf({E{0, Rational(3, 2)}, E{1, Rational(-1, 2)}}), InvalidArgument);
  EXPECT_THROW(ExactPmf({E{0, Rational(3, 4)}, E{1, Rational(1, 2)}}, true), InvalidArgument);
  const ExactPmf defective({E{0, Rational(1, 2)}, E{3, Rational(1, 4)}}, true);
  EXPECT_EQ(defective.deficit(), Rational(1, 4));
  EXPECT_EQ(defective.mean(), Rational(3, 4));
  EXPECT_EQ(defective.mass(2), 0);
}

TEST(IntPolynomial, PowerPrefixMatchesRepeatedMultiplication) {
  const IntPolynomial g({BigInt(3), BigInt(4), BigInt(2)});
  EXPECT_EQ(g.pow(2), IntPolynomial({BigInt(9), BigInt(24), BigInt(28), BigInt(16), BigInt(4)}));
  for (unsigned n : {1u, 2u, 7u, 20u}) {
    const IntPolynomial full = g.pow(n);
    const auto prefix = g.power_prefix(n, 2 * n + 3);
    for (std::size_t m = 0; m < prefix.size(); ++m) EXPECT_EQ(prefix[m], full.coefficient(m)) << n << " " << m;
  }
}

TEST(IntPolynomial, ContentAndTrim) {
  const IntPolynomial p({BigInt(9), BigInt(12), BigInt(6), BigInt(0)});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.content(), 3);
  EXPECT_TRUE(IntPolynomial({BigInt(0)}).is_zero());
  EXPECT_THROW(IntPolynomial({BigInt(0), BigInt(1)}).power_prefix(2, 3), InvalidArgument);
}
