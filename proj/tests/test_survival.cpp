#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rumor/survival.hpp"

using namespace rumor;

TEST(FixedPoint, SubcriticalShortCircuit) {
  const auto fp = extinction_fixed_point({2, 1});
  EXPECT_EQ(fp.psi, 1.0);
  EXPECT_EQ(fp.iterations, 0u);
  EXPECT_TRUE(fp.converged);
  EXPECT_TRUE(fp.subcritical);
  EXPECT_EQ(survival_probability({2, 1}), 0.0);
}

TEST(FixedPoint, QuadraticFixture) {
  // φ(s) = (1 + 4s + 4s²)/9 has fixed points 1/4 and 1.
  const auto fp = extinction_fixed_point({2, 2});
  EXPECT_TRUE(fp.converged);
  EXPECT_NEAR(fp.psi, 0.25, 1e-10);
  EXPECT_NEAR(survival_probability({2, 2}), 15.0 / 16.0, 1e-10);
}

TEST(FixedPoint, ResidualAndNoSmallerRoot) {
  for (int d = 2; d <= 10; ++d) {
    for (int k = 1; k <= 3; ++k) {
      const ModelParams p{d, k};
      const double tol = 1e-12;
      const auto fp = extinction_fixed_point(p, tol);
      ASSERT_TRUE(fp.converged);
      EXPECT_GE(fp.psi, 0.0);
      EXPECT_LE(fp.psi, 1.0);
      EXPECT_LE(fp.residual, tol);
      const ExactPmf pmf = offspring_pmf(p);
      EXPECT_NEAR(pmf.pgf(1.0), 1.0, 1e-12);
      for (int j = 0; j < 1000; ++j) {
        const double s = (fp.psi - tol) * j / 1000.0;
        if (s >= fp.psi - tol) break;
        EXPECT_GT(pmf.pgf(s), s) << d << "," << k << " s=" << s;
      }
    }
  }
}

TEST(FixedPoint, MatchesHighPrecisionReference) {
  for (const auto& ref : oracle::theta_reference()) {
    const auto fp = extinction_fixed_point({ref.d, ref.k});
    EXPECT_NEAR(fp.psi, ref.psi, 1e-10) << ref.d << "," << ref.k;
    EXPECT_NEAR(survival_probability({ref.d, ref.k}), ref.theta, 1e-10) << ref.d << "," << ref.k;
  }
}

TEST(FixedPoint, ToleranceValidation) {
  EXPECT_THROW(extinction_fixed_point({3, 1}, 0.0), InvalidArgument);
  EXPECT_THROW(extinction_fixed_point({3, 1}, 1e-3), InvalidArgument);
  EXPECT_THROW(extinction_fixed_point({1, 1}), InvalidArgument);
}

TEST(FixedPoint, IterationCapIsReported) {
  const auto fp = extinction_fixed_point({3, 1}, 1e-12, 3);
  EXPECT_FALSE(fp.converged);
  EXPECT_EQ(fp.iterations, 3u);
}

TEST(Survival, ThetaTwoThree) {
  EXPECT_NEAR(survival_probability({2, 3}), 0.9964, 5e-5);
}

TEST(Survival, PhaseTransitionAtKOne) {
  for (int d = 2; d <= 10; ++d) EXPECT_EQ(survival_probability({d, 1}) > 0.0, d >= 3) << d;
  for (int d = 2; d <= 10; ++d) {
    for (int k = 2; k <= 4; ++k) EXPECT_GT(survival_probability({d, k}), 0.0);
  }
}

TEST(Survival, MonotoneInDAndK) {
  for (int k = 1; k <= 3; ++k) {
    for (int d = 2; d < 10; ++d) EXPECT_LE(survival_probability({d, k}), survival_probability({d + 1, k}));
  }
  for (int d = 2; d <= 10; ++d) {
    for (int k = 1; k < 3; ++k) EXPECT_LE(survival_probability({d, k}), survival_probability({d, k + 1}));
  }
  EXPECT_GE(survival_probability({50, 1}), 0.9995);
}

TEST(ThetaTable, GridAndFormatting) {
  const ThetaTable t = theta_table({2, 3, 50}, {1, 2});
  ASSERT_EQ(t.cells.size(), 6u);
  EXPECT_EQ(format_fixed6(*t.at(0, 0).theta), "0.000000");
  EXPECT_EQ(format_fixed6(*t.at(1, 0).theta), "0.937500");
  EXPECT_EQ(format_fixed6(*t.at(0, 1).theta), "0.661289");
  EXPECT_EQ(format_fixed6(*t.at(0, 2).theta), "0.999583");
}

TEST(ThetaTable, BadCellDoesNotAbortTable) {
  const ThetaTable t = theta_table({1, 3}, {1});
  ASSERT_EQ(t.cells.size(), 2u);
  EXPECT_FALSE(t.at(0, 0).theta.has_value());
  EXPECT_FALSE(t.at(0, 0).error.empty());
  ASSERT_TRUE(t.at(0, 1).theta.has_value());
  EXPECT_NEAR(*t.at(0, 1).theta, 0.661289, 5e-7);
}
