#pragma once

// Total progeny of the branching process embedded in the rumour process.
//
// T counts every vertex that ever hears the rumour other than the initial
// spreader; S∞ = T + 1 also counts the initial spreader. With N ~ root law
// and X_1, X_2, … iid ~ offspring law, the hitting-time identity gives
//   P(T = i) = Σ_n P(N = n)·(n/i)·P(X_1 + … + X_i = i − n),   i ≥ n.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rumor/distributions.hpp"
#include "rumor/errors.hpp"
#include "rumor/params.hpp"
#include "rumor/pmf.hpp"
#include "rumor/polynomial.hpp"
#include "rumor/rational.hpp"

namespace rumor {

/// P(X_1 + … + X_i = j) for iid offspring counts.
inline Rational iid_sum_coefficient(const ModelParams& params, unsigned i, std::uint64_t j) {
  if (i < 1) throw InvalidArgument("iid_sum_coefficient: i must be ≥ 1");
  const ScaledPolynomial poly = offspring_polynomial(params);
  const auto max_power = static_cast<std::uint64_t>(poly.numerator.degree()) * i;
  if (j > max_power) return 0;
  const auto coeffs = poly.numerator.power_prefix(i, static_cast<std::size_t>(j) + 1);
  return make_rational(coeffs[static_cast<std::size_t>(j)], big_pow(poly.denominator, i));
}

/// Exact P(T = i) for i = 1..i_max as a defective pmf (deficit = mass beyond
/// i_max plus, for supercritical parameters, the survival probability).
inline ExactPmf progeny_pmf(const ModelParams& params, unsigned i_max) {
  if (i_max < 1) throw InvalidArgument("progeny_pmf: i_max must be ≥ 1");
  const ExactPmf root = root_pmf(params);
  const ScaledPolynomial poly = offspring_polynomial(params);
  std::vector<ExactPmf::Entry> entries;
  entries.reserve(i_max);
  BigInt den_power = 1;
  for (unsigned i = 1; i <= i_max; ++i) {
    den_power *= poly.denominator;
    const auto coeffs = poly.numerator.power_prefix(i, i);
    Rational mass = 0;
    for (const auto& [n, pn] : root.entries()) {
      if (n > i) continue;
      mass += pn * Rational(BigInt(n) * coeffs[i - n], BigInt(i));
    }
    entries.push_back({i, mass / den_power});
  }
  return ExactPmf(std::move(entries), /*defective=*/true);
}

/// Floating-point P(T = i), index i = 0..i_max (index 0 is always zero).
/// Runs the same power recurrence as the exact route on doubles, rescaled to
/// stay in range; suited to i_max far beyond what exact arithmetic allows.
inline std::vector<double> progeny_pmf_float(const ModelParams& params, unsigned i_max) {
  if (i_max < 1) throw InvalidArgument("progeny_pmf_float: i_max must be ≥ 1");
  const std::vector<double> g = offspring_pmf(params).dense();
  const std::vector<double> root = root_pmf(params).dense();
  const double g0 = g[0];
  const double log_g0 = std::log(g0);
  const long deg = static_cast<long>(g.size()) - 1;
  constexpr double kRescaleAbove = 1e200;

  std::vector<double> out(static_cast<std::size_t>(i_max) + 1, 0.0);
  std::vector<double> h;
  for (unsigned i = 1; i <= i_max; ++i) {
    // h_m = [s^m] φ^i / g0^i, carried as h_m·exp(log_scale).
    h.assign(i, 0.0);
    h[0] = 1.0;
    double log_scale = 0.0;
    const double n1 = static_cast<double>(i) + 1.0;
    for (long m = 1; m < static_cast<long>(i); ++m) {
      double acc = 0.0;
      for (long j = 1; j <= std::min(m, deg); ++j) {
        acc += (n1 * static_cast<double>(j) - static_cast<double>(m)) * g[j] * h[m - j];
      }
      h[m] = acc / (static_cast<double>(m) * g0);
      if (h[m] > kRescaleAbove) {
        for (long t = 0; t <= m; ++t) h[t] /= kRescaleAbove;
        log_scale += std::log(kRescaleAbove);
      }
    }
    double mass = 0.0;
    for (long n = 1; n < static_cast<long>(root.size()); ++n) {
      if (n > static_cast<long>(i) || root[n] == 0.0) continue;
      const double coeff = h[i - n];
      if (coeff <= 0.0) continue;
      const double log_term = std::log(coeff) + log_scale + static_cast<double>(i) * log_g0;
      mass += root[n] * static_cast<double>(n) / static_cast<double>(i) * std::exp(log_term);
    }
    out[i] = mass;
  }
  return out;
}

struct ProgenyMeans {
  Rational mean_descendants;     // E[T]
  Rational mean_informed_total;  // E[S∞] = E[T] + 1
};

/// E[T] = E[N] / (1 − μ). Only finite for subcritical parameters.
inline ProgenyMeans progeny_mean(const ModelParams& params) {
  const Rational mu = offspring_mean(params);
  if (mu >= 1) {
    throw InvalidArgument("progeny mean is infinite: offspring mean " + to_fraction_string(mu) + " is not below 1");
  }
  const Rational mean_t = root_mean(params) / (1 - mu);
  return {mean_t, mean_t + 1};
}

}  // namespace rumor
