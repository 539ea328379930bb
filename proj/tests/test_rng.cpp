#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

#include "rumor/rng.hpp"

using namespace rumor;

TEST(CounterRng, SplitMixReferenceOutputs) {
  // SplitMix64 seeded with 0 (reference values of the published generator).
  CounterRng rng(0);
  EXPECT_EQ(rng(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng(), 0x06c45d188009454fULL);
}

TEST(CounterRng, StreamsAreDeterministicAndDistinct) {
  CounterRng a(42), b(42), c(derive_key(42, 1));
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  std::set<std::uint64_t> keys;
  for (std::uint64_t i = 0; i < 10'000; ++i) keys.insert(derive_key(7, i));
  EXPECT_EQ(keys.size(), 10'000u);
  EXPECT_NE(derive_key(1, 2), derive_key(2, 1));
}

TEST(CounterRng, BelowIsUniform) {
  CounterRng rng(123);
  constexpr int kBins = 7;
  constexpr int kDraws = 700'000;
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const auto v = rng.below(kBins);
    ASSERT_LT(v, static_cast<std::uint64_t>(kBins));
    ++counts[v];
  }
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // χ²(6) upper 0.999 quantile
}

TEST(CounterRng, UniformAndExponentialMoments) {
  CounterRng rng(99);
  double sum = 0.0;
  double exp_sum = 0.0;
  constexpr int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    exp_sum += rng.exponential(2.0);
  }
  EXPECT_NEAR(sum / n, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(exp_sum / n, 0.5, 5 * 0.5 / std::sqrt(n));
}
