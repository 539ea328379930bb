#pragma once

// Laws of the number of new spreaders created by one spreader.
//
// A non-root spreader has d+1 neighbours, one of which (its parent) already
// knows the rumour. It contacts neighbours uniformly at random; a contact
// with an ignorant creates a new spreader, any other contact is a stifling
// experience, and the k-th stifling experience stops it. The root is the
// same except that all d+1 neighbours start out ignorant.

#include <cstdint>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/params.hpp"
#include "rumor/pmf.hpp"
#include "rumor/polynomial.hpp"
#include "rumor/rational.hpp"

namespace rumor {

namespace detail {

// Σ over non-decreasing 1 ≤ m_1 ≤ … ≤ m_{k-1} ≤ top of m_1·…·m_{k-1}.
// Suffix DP: g_0 ≡ 1, g_j(lo) = lo·g_{j-1}(lo) + g_j(lo+1); answer g_{k-1}(1).
inline BigInt nondecreasing_product_sum(long top, int k) {
  if (k == 1) return 1;
  std::vector<BigInt> prev(static_cast<std::size_t>(top) + 2, BigInt(1));
  prev[static_cast<std::size_t>(top) + 1] = 0;
  std::vector<BigInt> cur(prev.size(), BigInt(0));
  for (int j = 1; j <= k - 1; ++j) {
    cur[static_cast<std::size_t>(top) + 1] = 0;
    for (long lo = top; lo >= 1; --lo) {
      const auto idx = static_cast<std::size_t>(lo);
      cur[idx] = lo * prev[idx] + cur[idx + 1];
    }
    std::swap(prev, cur);
  }
  return top >= 1 ? prev[1] : BigInt(0);
}

}  // namespace detail

/// Stifling sum with upper limit i+1 (weights of the non-root offspring law).
inline BigInt stifling_sum_S(long i, int k) {
  if (i < 0) throw InvalidArgument("stifling_sum_S: i must be ≥ 0");
  if (k < 1) throw InvalidArgument("stifling_sum_S: k must be ≥ 1");
  return detail::nondecreasing_product_sum(i + 1, k);
}

/// Stifling sum with upper limit i (weights of the root offspring law).
inline BigInt stifling_sum_Sstar(long i, int k) {
  if (i < 1) throw InvalidArgument("stifling_sum_Sstar: i must be ≥ 1");
  if (k < 1) throw InvalidArgument("stifling_sum_Sstar: k must be ≥ 1");
  return detail::nondecreasing_product_sum(i, k);
}

namespace detail {

// Raw masses of X^(k). `exponent_fault` swaps (d+1)^(i+k) for (d+1)^(i+1);
// only the validation suite's mutation check uses it.
inline std::vector<Rational> offspring_masses(const ModelParams& params, bool exponent_fault = false) {
  validate(params);
  const auto d = static_cast<unsigned>(params.d);
  const auto k = static_cast<unsigned>(params.k);
  std::vector<Rational> masses;
  masses.reserve(d + 1);
  for (unsigned i = 0; i <= d; ++i) {
    const BigInt num = binomial(d, i) * factorial(i + 1) * stifling_sum_S(i, params.k);
    masses.push_back(make_rational(num, big_pow(BigInt(d + 1), i + (exponent_fault ? 1 : k))));
  }
  return masses;
}

}  // namespace detail

/// Law of X^(k): P(i) = C(d,i)·(i+1)!·S(i,k) / (d+1)^(i+k), i = 0..d.
inline ExactPmf offspring_pmf(const ModelParams& params) {
  std::vector<Rational> masses = detail::offspring_masses(params);
  std::vector<ExactPmf::Entry> entries;
  entries.reserve(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) entries.push_back({i, std::move(masses[i])});
  return ExactPmf(std::move(entries));
}

/// Law of N^(k): P(i) = i·i!·C(d+1,i)·S*(i,k) / (d+1)^(i+k), i = 1..d+1.
inline ExactPmf root_pmf(const ModelParams& params) {
  validate(params);
  const auto d = static_cast<unsigned>(params.d);
  const auto k = static_cast<unsigned>(params.k);
  std::vector<ExactPmf::Entry> entries;
  entries.reserve(d + 1);
  for (unsigned i = 1; i <= d + 1; ++i) {
    const BigInt num = BigInt(i) * factorial(i) * binomial(d + 1, i) * stifling_sum_Sstar(i, params.k);
    entries.push_back({i, make_rational(num, big_pow(BigInt(d + 1), i + k))});
  }
  return ExactPmf(std::move(entries));
}

inline Rational offspring_mean(const ModelParams& params) { return offspring_pmf(params).mean(); }

inline Rational root_mean(const ModelParams& params) { return root_pmf(params).mean(); }

/// φ(s) = E[s^X^(k)] for s in [0, 1].
inline double offspring_pgf(const ModelParams& params, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("offspring_pgf: s must lie in [0, 1]");
  return offspring_pmf(params).pgf(s);
}

inline Rational offspring_pgf(const ModelParams& params, const Rational& s) {
  if (s < 0 || s > 1) throw InvalidArgument("offspring_pgf: s must lie in [0, 1]");
  return offspring_pmf(params).pgf(s);
}

/// Offspring pgf written as numerator(s) / denominator with a primitive
/// integer numerator (coefficient content divided out).
struct ScaledPolynomial {
  IntPolynomial numerator;
  BigInt denominator;
};

inline ScaledPolynomial offspring_polynomial(const ModelParams& params) {
  const ExactPmf pmf = offspring_pmf(params);
  BigInt common = 1;
  for (const auto& e : pmf.entries()) common = boost::multiprecision::lcm(common, denominator_of(e.mass));
  std::vector<BigInt> coeffs;
  coeffs.reserve(pmf.size());
  for (const auto& e : pmf.entries()) coeffs.push_back(numerator_of(e.mass * common));
  IntPolynomial num(std::move(coeffs));
  const BigInt g = num.content();
  std::vector<BigInt> reduced = num.coefficients();
  for (auto& c : reduced) c /= g;
  return {IntPolynomial(std::move(reduced)), common / g};
}

}  // namespace rumor
