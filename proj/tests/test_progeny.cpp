#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rumor/progeny.hpp"
#include "rumor/survival.hpp"

using namespace rumor;

TEST(IidSum, Fixtures) {
  EXPECT_EQ(iid_sum_coefficient({2, 1}, 1, 1), Rational(4, 9));
  EXPECT_EQ(iid_sum_coefficient({2, 1}, 2, 1), Rational(24, 81));
  for (unsigned i = 1; i <= 5; ++i) EXPECT_EQ(iid_sum_coefficient({2, 1}, i, 2 * i + 1), 0);
  EXPECT_THROW(iid_sum_coefficient({2, 1}, 0, 0), InvalidArgument);
}

TEST(IidSum, SumsToOne) {
  for (const ModelParams p : {ModelParams{2, 1}, ModelParams{3, 2}, ModelParams{4, 3}}) {
    for (unsigned i = 1; i <= 4; ++i) {
      Rational total = 0;
      for (std::uint64_t j = 0; j <= static_cast<std::uint64_t>(p.d) * i; ++j) total += iid_sum_coefficient(p, i, j);
      EXPECT_EQ(total, 1);
    }
  }
}

TEST(Progeny, SmallValuesByEnumeration) {
  const ExactPmf pmf = progeny_pmf({2, 1}, 5);
  EXPECT_EQ(pmf.mass(1), Rational(1, 9));
  EXPECT_EQ(pmf.mass(2), Rational(8, 81));
  EXPECT_EQ(pmf.mass(0), 0);
  EXPECT_TRUE(pmf.defective());
}

TEST(Progeny, DwassRouteMatchesCoefficientForm) {
  const ExactPmf pmf = progeny_pmf({2, 1}, 50);
  for (unsigned i = 1; i <= 50; ++i) EXPECT_EQ(pmf.mass(i), oracle::mt_progeny_coefficient_form(i)) << i;
}

TEST(Progeny, SubcriticalMassAccumulates) {
  // Reference masses from direct convolution of the offspring law.
  EXPECT_NEAR(to_double(progeny_pmf({2, 1}, 200).total_mass()), 0.99668626599227, 1e-12);
  EXPECT_GE(to_double(progeny_pmf({2, 1}, 300).total_mass()), 0.999);
}

TEST(Progeny, FloatRouteAgreesWithExact) {
  for (const ModelParams p : {ModelParams{2, 1}, ModelParams{3, 1}, ModelParams{2, 2}}) {
    const ExactPmf exact = progeny_pmf(p, 120);
    const auto approx = progeny_pmf_float(p, 120);
    EXPECT_EQ(approx[0], 0.0);
    for (unsigned i = 1; i <= 120; ++i) {
      const double e = to_double(exact.mass(i));
      EXPECT_NEAR(approx[i], e, 1e-12 * std::max(1.0, e) + 1e-300) << i;
      if (e > 1e-250) {
        EXPECT_NEAR(approx[i] / e, 1.0, 1e-9) << i;
      }
    }
  }
}

TEST(Progeny, SupercriticalDeficitApproachesSurvival) {
  const auto pmf = progeny_pmf_float({3, 1}, 10'000);
  double mass = 0.0;
  for (double m : pmf) mass += m;
  EXPECT_NEAR(1.0 - mass, survival_probability({3, 1}), 1e-3);
}

TEST(ProgenyMean, Fixtures) {
  const auto means = progeny_mean({2, 1});
  EXPECT_EQ(means.mean_descendants, 17);
  EXPECT_EQ(means.mean_informed_total, 18);
  EXPECT_EQ(root_mean({2, 1}) * 9, means.mean_descendants);
  EXPECT_THROW(progeny_mean({3, 1}), InvalidArgument);
  EXPECT_THROW(progeny_mean({2, 2}), InvalidArgument);
}

TEST(ProgenyMean, TruncatedSeriesConverges) {
  const auto pmf = progeny_pmf_float({2, 1}, 2000);
  double mean = 0.0;
  for (std::size_t i = 0; i < pmf.size(); ++i) mean += static_cast<double>(i) * pmf[i];
  EXPECT_NEAR(mean, 17.0, 1e-6);
}
