#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rumor/distributions.hpp"

using namespace rumor;

namespace {

ExactPmf::Entry entry(std::uint64_t v, long n, long d) { return {v, Rational(n, d)}; }

void expect_pmf(const ExactPmf& pmf, const std::vector<ExactPmf::Entry>& expected) {
  ASSERT_EQ(pmf.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(pmf.entries()[i].value, expected[i].value);
    EXPECT_EQ(pmf.entries()[i].mass, expected[i].mass) << "value " << expected[i].value;
  }
}

}  // namespace

TEST(StiflingSums, EmptyProductForKOne) {
  for (long i = 0; i < 10; ++i) {
    EXPECT_EQ(stifling_sum_S(i, 1), 1);
    if (i >= 1) {
      EXPECT_EQ(stifling_sum_Sstar(i, 1), 1);
    }
  }
  EXPECT_EQ(stifling_sum_S(5, 1), 1);
  EXPECT_EQ(stifling_sum_Sstar(4, 1), 1);
}

TEST(StiflingSums, SmallEnumerations) {
  EXPECT_EQ(stifling_sum_S(2, 2), 6);
  EXPECT_EQ(stifling_sum_Sstar(2, 3), 7);
}

TEST(StiflingSums, ClosedFormsForKThree) {
  for (long i = 0; i <= 6; ++i) EXPECT_EQ(stifling_sum_S(i, 3), oracle::stifling_S_k3(i)) << i;
  for (long i = 1; i <= 6; ++i) EXPECT_EQ(stifling_sum_Sstar(i, 3), oracle::stifling_Sstar_k3(i)) << i;
}

TEST(StiflingSums, MatchNestedEnumeration) {
  for (int k = 1; k <= 5; ++k) {
    for (long i = 1; i <= 7; ++i) {
      EXPECT_EQ(stifling_sum_S(i, k), oracle::nested_sum(i + 1, k));
      EXPECT_EQ(stifling_sum_Sstar(i, k), oracle::nested_sum(i, k));
    }
  }
}

TEST(StiflingSums, RejectOutOfDomain) {
  EXPECT_THROW(stifling_sum_S(-1, 2), InvalidArgument);
  EXPECT_THROW(stifling_sum_S(2, 0), InvalidArgument);
  EXPECT_THROW(stifling_sum_Sstar(0, 2), InvalidArgument);
  EXPECT_THROW(stifling_sum_Sstar(3, -1), InvalidArgument);
}

TEST(OffspringPmf, Fixtures) {
  expect_pmf(offspring_pmf({2, 1}), {entry(0, 1, 3), entry(1, 4, 9), entry(2, 2, 9)});
  expect_pmf(offspring_pmf({2, 2}), {entry(0, 1, 9), entry(1, 4, 9), entry(2, 4, 9)});
}

TEST(RootPmf, Fixtures) {
  expect_pmf(root_pmf({2, 1}), {entry(1, 3, 9), entry(2, 4, 9), entry(3, 2, 9)});
  expect_pmf(root_pmf({2, 2}), {entry(1, 1, 9), entry(2, 4, 9), entry(3, 4, 9)});
}

TEST(Pmfs, NormalisedAndSupported) {
  for (int d = 2; d <= 12; ++d) {
    for (int k = 1; k <= 5; ++k) {
      const ExactPmf off = offspring_pmf({d, k});
      const ExactPmf root = root_pmf({d, k});
      EXPECT_EQ(off.total_mass(), 1);
      EXPECT_EQ(root.total_mass(), 1);
      EXPECT_EQ(off.max_value(), static_cast<std::uint64_t>(d));
      EXPECT_EQ(root.max_value(), static_cast<std::uint64_t>(d + 1));
      EXPECT_EQ(root.entries().front().value, 1u);
    }
  }
}

TEST(Pmfs, KOneReducesToCouponCollectorForms) {
  for (unsigned d = 2; d <= 8; ++d) {
    const ExactPmf off = offspring_pmf({static_cast<int>(d), 1});
    const ExactPmf root = root_pmf({static_cast<int>(d), 1});
    for (unsigned i = 0; i <= d; ++i) {
      const Rational distx(binomial(d, i) * factorial(i + 1), big_pow(BigInt(d + 1), i + 1));
      EXPECT_EQ(off.mass(i), distx);
    }
    for (unsigned i = 1; i <= d + 1; ++i) {
      const Rational distn(factorial(i) * binomial(d + 1, i) * i, big_pow(BigInt(d + 1), i + 1));
      EXPECT_EQ(root.mass(i), distn);
    }
  }
}

TEST(Pmfs, MatchExhaustiveContactEnumeration) {
  for (int d = 2; d <= 4; ++d) {
    for (int k = 1; k <= 3; ++k) {
      const auto nonroot = oracle::enumerate_offspring(d, k, true);
      const auto root = oracle::enumerate_offspring(d, k, false);
      const ExactPmf off = offspring_pmf({d, k});
      const ExactPmf rpmf = root_pmf({d, k});
      for (int i = 0; i <= d + 1; ++i) {
        EXPECT_EQ(off.mass(static_cast<std::uint64_t>(i)), nonroot[static_cast<std::size_t>(i)]) << d << k << i;
        EXPECT_EQ(rpmf.mass(static_cast<std::uint64_t>(i)), root[static_cast<std::size_t>(i)]) << d << k << i;
      }
    }
  }
}

TEST(Pmfs, KTwoMassAtTwo) {
  for (int d = 2; d <= 8; ++d) {
    EXPECT_EQ(offspring_pmf({d, 2}).mass(2), Rational(18 * d * (d - 1), (d + 1) * (d + 1) * (d + 1) * (d + 1)));
  }
}

TEST(OffspringMean, Fixtures) {
  EXPECT_EQ(offspring_mean({2, 1}), Rational(8, 9));
  EXPECT_EQ(offspring_mean({2, 2}), Rational(4, 3));
  EXPECT_GT(offspring_mean({3, 1}), 1);
}

TEST(OffspringMean, CriticalityPattern) {
  for (int d = 2; d <= 8; ++d) {
    EXPECT_EQ(offspring_mean({d, 1}) > 1, d >= 3) << d;
    for (int k = 2; k <= 4; ++k) EXPECT_GT(offspring_mean({d, k}), 1) << d << "," << k;
  }
}

TEST(OffspringPgf, ClosedForms) {
  for (double s : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
    EXPECT_NEAR(offspring_pgf({2, 1}, s), (2 * s * s + 4 * s + 3) / 9, 1e-15);
    EXPECT_NEAR(offspring_pgf({2, 2}, s), (1 + 4 * s + 4 * s * s) / 9, 1e-15);
  }
  for (int d = 2; d <= 10; ++d) {
    for (int k = 1; k <= 3; ++k) {
      EXPECT_NEAR(offspring_pgf({d, k}, 1.0), 1.0, 1e-14);
      EXPECT_EQ(offspring_pgf({d, k}, Rational(1)), 1);
    }
  }
  EXPECT_EQ(offspring_pgf({2, 1}, Rational(1, 2)), Rational(2 + 8 + 12, 36));
}

TEST(OffspringPgf, RejectsOutsideUnitInterval) {
  EXPECT_THROW(offspring_pgf({2, 1}, -0.1), InvalidArgument);
  EXPECT_THROW(offspring_pgf({2, 1}, 1.5), InvalidArgument);
  EXPECT_THROW(offspring_pgf({2, 1}, Rational(3, 2)), InvalidArgument);
}

TEST(ModelParams, Validation) {
  EXPECT_THROW(offspring_pmf({1, 1}), InvalidArgument);
  EXPECT_THROW(root_pmf({2, 0}), InvalidArgument);
  try {
    validate(ModelParams{1, 1});
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("d must be ≥ 2"), std::string::npos);
  }
}

TEST(OffspringPolynomial, PrimitiveNumerator) {
  const auto poly = offspring_polynomial({2, 1});
  EXPECT_EQ(poly.numerator, IntPolynomial({BigInt(3), BigInt(4), BigInt(2)}));
  EXPECT_EQ(poly.denominator, 9);
}
