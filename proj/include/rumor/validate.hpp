#pragma once

// Self-check suite behind `rumor validate`: analytic identities, regression
// values and simulator-versus-analytic comparisons, each reported with its
// measured discrepancy and threshold.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rumor/distributions.hpp"
#include "rumor/monte_carlo.hpp"
#include "rumor/progeny.hpp"
#include "rumor/range.hpp"
#include "rumor/survival.hpp"

namespace rumor {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

struct ValidateOptions {
  bool quick = false;
  std::uint64_t seed = 2016;
  unsigned jobs = 1;
  /// Mutation hook: build offspring laws with exponent i+1 instead of i+k.
  bool inject_exponent_fault = false;
};

/// Survival probabilities from a 40-digit evaluation of the same pgfs.
struct SurvivalReference {
  int d;
  int k;
  double theta;
};

inline const std::vector<SurvivalReference>& survival_reference() {
  static const std::vector<SurvivalReference> table = {
      {2, 1, 0.0},
      {3, 1, 0.66128892321977836},
      {4, 1, 0.86980226046179473},
      {5, 1, 0.93113402682429066},
      {6, 1, 0.95729956228425281},
      {7, 1, 0.97088719865355579},
      {50, 1, 0.99958316681107532},
      {2, 2, 0.9375},
      {3, 2, 0.99149879997855305},
      {4, 2, 0.99743430334918963},
      {5, 2, 0.99893633537477953},
      {6, 2, 0.99947387430066299},
      {7, 2, 0.99970822728273914},
      {50, 2, 0.9999998515131184},
  };
  return table;
}

namespace detail {

inline CheckResult at_most(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

inline CheckResult holds(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

// Offspring law of one spreader by walking every contact sequence.
inline std::vector<Rational> enumerate_contacts(int d, int k, bool parent_known) {
  const int slots = d + 1;
  std::vector<Rational> law(static_cast<std::size_t>(slots) + 1, Rational(0));
  std::vector<char> known(static_cast<std::size_t>(slots), 0);
  known[0] = parent_known ? 1 : 0;
  const Rational step(1, slots);
  std::function<void(int, int, const Rational&)> walk = [&](int stifles, int informed, const Rational& prob) {
    if (stifles == k) {
      law[static_cast<std::size_t>(informed)] += prob;
      return;
    }
    for (int s = 0; s < slots; ++s) {
      auto& seen = known[static_cast<std::size_t>(s)];
      if (seen) {
        walk(stifles + 1, informed, prob * step);
      } else {
        seen = 1;
        walk(stifles, informed + 1, prob * step);
        seen = 0;
      }
    }
  };
  walk(0, 0, Rational(1));
  return law;
}

}  // namespace detail

inline ValidationReport run_validation(const ValidateOptions& options = {}) {
  ValidationReport report;
  auto& out = report.checks;
  using detail::at_most;
  using detail::holds;

  // Normalisation of both laws (the mutation hook targets this check).
  {
    double worst = 0.0;
    for (int d = 2; d <= 8; ++d) {
      for (int k = 1; k <= 4; ++k) {
        Rational total = 0;
        for (const auto& m : detail::offspring_masses({d, k}, options.inject_exponent_fault)) total += m;
        worst = std::max(worst, std::abs(to_double(total - 1)));
        worst = std::max(worst, std::abs(to_double(root_pmf({d, k}).total_mass() - 1)));
      }
    }
    out.push_back(at_most("pmf_normalization", worst, 0.0, "d=2..8, k=1..4, exact"));
  }

  // Remaining analytic checks need a well-formed offspring law.
  if (options.inject_exponent_fault) return report;

  {
    bool ok = true;
    for (int d = 2; d <= 4 && ok; ++d) {
      for (int k = 1; k <= 3 && ok; ++k) {
        const auto nonroot = detail::enumerate_contacts(d, k, true);
        const auto root = detail::enumerate_contacts(d, k, false);
        const ExactPmf off = offspring_pmf({d, k});
        const ExactPmf rp = root_pmf({d, k});
        for (int i = 0; i <= d + 1; ++i) {
          ok = ok && off.mass(static_cast<std::uint64_t>(i)) == nonroot[static_cast<std::size_t>(i)] &&
               rp.mass(static_cast<std::uint64_t>(i)) == root[static_cast<std::size_t>(i)];
        }
      }
    }
    out.push_back(holds("pmf_contact_enumeration", ok, "d=2..4, k=1..3"));
  }

  {
    bool ok = true;
    for (unsigned d = 2; d <= 8; ++d) {
      const ExactPmf off = offspring_pmf({static_cast<int>(d), 1});
      const ExactPmf root = root_pmf({static_cast<int>(d), 1});
      for (unsigned i = 0; i <= d; ++i) {
        ok = ok && off.mass(i) == Rational(binomial(d, i) * factorial(i + 1), big_pow(BigInt(d + 1), i + 1));
      }
      for (unsigned i = 1; i <= d + 1; ++i) {
        ok = ok && root.mass(i) == Rational(factorial(i) * binomial(d + 1, i) * i, big_pow(BigInt(d + 1), i + 1));
      }
    }
    out.push_back(holds("k1_closed_forms", ok, "d=2..8"));
  }

  {
    double worst = 0.0;
    for (const auto& ref : survival_reference()) {
      worst = std::max(worst, std::abs(survival_probability({ref.d, ref.k}) - ref.theta));
    }
    out.push_back(at_most("theta_table_regression", worst, 5e-7, "d in {2..7,50}, k in {1,2}"));
  }

  {
    const auto fp = extinction_fixed_point({2, 2});
    const double err = std::max(std::abs(fp.psi - 0.25), std::abs(survival_probability({2, 2}) - 0.9375));
    out.push_back(at_most("theta_2_2_fixture", err, 1e-10, "psi=1/4, theta=15/16"));
  }

  {
    bool closed_forms = true;
    for (long i = 1; i <= 6; ++i) {
      closed_forms = closed_forms && stifling_sum_S(i, 3) == BigInt(i + 1) * (i + 2) * (3 * i * i + 13 * i + 12) / 24 &&
                     stifling_sum_Sstar(i, 3) == BigInt(i) * (i + 1) * (3 * i * i + 7 * i + 2) / 24;
    }
    const double err = std::abs(survival_probability({2, 3}) - 0.9964);
    out.push_back(at_most("theta_2_3", closed_forms ? err : 1.0, 5e-5, "with k=3 closed-form sums"));
  }

  {
    bool ok = offspring_mean({2, 1}) == Rational(8, 9) && survival_probability({2, 1}) == 0.0;
    for (int d = 3; d <= 10; ++d) ok = ok && survival_probability({d, 1}) > 0.0;
    for (int d = 2; d <= 10; ++d) {
      for (int k = 1; k <= 3; ++k) {
        if (d < 10) ok = ok && survival_probability({d, k}) <= survival_probability({d + 1, k});
        if (k < 3) ok = ok && survival_probability({d, k}) <= survival_probability({d, k + 1});
      }
    }
    ok = ok && survival_probability({50, 1}) >= 0.9995;
    out.push_back(holds("phase_transition_and_monotonicity", ok, "d=2..10, k=1..3"));
  }

  {
    const ExactPmf pmf = progeny_pmf({2, 1}, 50);
    bool ok = pmf.mass(1) == Rational(1, 9) && pmf.mass(2) == Rational(8, 81);
    const IntPolynomial base({BigInt(3), BigInt(4), BigInt(2)});
    for (unsigned i = 1; i <= 50 && ok; ++i) {
      const IntPolynomial power = base.pow(i);
      auto c = [&](long j) { return j < 0 ? BigInt(0) : power.coefficient(static_cast<std::size_t>(j)); };
      const long ii = i;
      const Rational form(3 * c(ii - 1) + 8 * c(ii - 2) + 6 * c(ii - 3), 9 * ii * big_pow(BigInt(9), i));
      ok = pmf.mass(i) == form;
    }
    const auto means = progeny_mean({2, 1});
    ok = ok && means.mean_descendants == 17 && means.mean_informed_total == 18;
    const auto approx = progeny_pmf_float({2, 1}, 2000);
    double mean = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) mean += static_cast<double>(i) * approx[i];
    out.push_back(at_most("progeny_exact", ok ? std::abs(mean - 17.0) : 1.0, 1e-6,
                          "P(T=1)=1/9, P(T=2)=8/81, coefficient form i<=50, E[T]=17, E[S]=18, truncated mean"));
  }

  {
    const auto r = expected_range_bounds(1e-13);
    const double printed[6] = {4.4619, 4.9792, 2.0982, 2.3592, 1.5189, 1.6804};
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i) {
      const double rounded =
          i % 2 == 0 ? std::floor(r.series[i].lower * 1e4) / 1e4 : std::ceil(r.series[i].upper * 1e4) / 1e4;
      worst = std::max(worst, std::abs(rounded - printed[i]));
    }
    worst = std::max({worst, std::abs(r.lower - 6.144) > 1e-3 ? 1.0 : 0.0, std::abs(r.upper - 7.448) > 1e-3 ? 1.0 : 0.0});
    out.push_back(at_most("range_series_constants", worst, 1e-9, "outward-rounded constants and E(R) enclosure"));
  }

  {
    const auto lo = lower_bounding_gf();
    const auto hi = upper_bounding_gf();
    bool ok = lo(Rational(1)) == 1 && hi(Rational(1)) == 1 && lo.derivative(Rational(1)) == Rational(8, 9) &&
              hi.derivative(Rational(1)) == Rational(8, 9);
    for (int j = 0; j < 1000 && ok; ++j) {
      const Rational s(j, 1000);
      const Rational phi = mt_offspring_pgf(s);
      ok = h_criterion(s) < 0 && lo(s) <= phi && phi <= hi(s);
    }
    double worst = 0.0;
    for (std::uint64_t n = 0; n <= 60; ++n) {
      const auto b = extinction_time_cdf_bounds(n);
      worst = std::max({worst, std::abs(lo.iterate(n, 0.0) - b.lower), std::abs(hi.iterate(n, 0.0) - b.upper)});
    }
    out.push_back(at_most("bounding_gf_certificates", ok ? worst : 1.0, 1e-10, "L,U endpoints, h<0, sandwich, compositions"));
  }

  // Simulation cross-checks. Quick mode uses 1e4 runs; thresholds scale by
  // sqrt(10) to keep the same noise margin.
  const std::uint64_t runs = options.quick ? 10'000 : 100'000;
  const std::uint64_t eq_runs = options.quick ? 10'000 : 50'000;
  const double widen = options.quick ? std::sqrt(10.0) : 1.0;
  McOptions mc;
  mc.base_seed = options.seed;
  mc.jobs = options.jobs;

  {
    double worst = 0.0;
    for (const ModelParams p : {ModelParams{2, 1}, ModelParams{2, 2}, ModelParams{3, 1}}) {
      mc.runs = runs;
      mc.depth_limit = 2;
      mc.engine = Engine::kGenealogy;
      const McSummary s = monte_carlo(p, mc);
      worst = std::max({worst, total_variation(s.root_offspring_pmf(), root_pmf(p).dense()),
                        total_variation(s.offspring_pmf(), offspring_pmf(p).dense())});
    }
    out.push_back(at_most("simulated_offspring_laws", worst, 0.01 * widen, "genealogy engine, TV distance"));
  }

  {
    mc.runs = runs;
    mc.depth_limit = kUnboundedDepth;
    mc.engine = Engine::kGenealogy;
    const McSummary s = monte_carlo({2, 1}, mc);
    const Estimate mean = s.mean_informed_total();
    const double z = mean.std_error ? std::abs(mean.value - 17.0) / *mean.std_error : 1e9;
    out.push_back(at_most("simulated_mean_progeny", z, 3.0, "|mean - 17| in standard errors"));

    double worst = 0.0;
    for (std::uint32_t n = 1; n <= 8; ++n) {
      const Estimate e = s.max_depth_cdf(n);
      const auto b = range_cdf_bounds(n);
      const double se = e.std_error.value_or(1.0);
      const double below = (b.lower - e.value) / se;
      const double above = (e.value - b.upper) / se;
      worst = std::max({worst, below, above});
    }
    out.push_back(at_most("simulated_range_sandwich", worst, 3.0, "P(R<=n) outside bounds, in standard errors"));
  }

  {
    double worst = 0.0;
    for (const ModelParams p : {ModelParams{2, 1}, ModelParams{2, 2}, ModelParams{3, 1}}) {
      mc.runs = eq_runs;
      mc.depth_limit = 8;
      mc.engine = Engine::kJumpChain;
      const McSummary jump = monte_carlo(p, mc);
      mc.engine = Engine::kGenealogy;
      const McSummary gen = monte_carlo(p, mc);
      worst = std::max({worst, total_variation(jump.root_offspring_pmf(), gen.root_offspring_pmf()),
                        total_variation(jump.max_depth_pmf(), gen.max_depth_pmf())});
    }
    out.push_back(at_most("engine_equivalence", worst, 0.02 * widen, "root offspring and max depth, TV distance"));
  }

  return report;
}

}  // namespace rumor
