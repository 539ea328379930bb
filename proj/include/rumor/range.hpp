#pragma once

// Bounds on the extinction time and the range of spreading for the d = 2,
// k = 1 model, where the offspring pgf is φ(s) = (2s² + 4s + 3)/9.
//
// φ is sandwiched between two fractional linear generating functions
// L ≤ φ ≤ U on [0, 1]. Iterates of fractional linear maps have closed forms,
// which bound P(T ≤ n) = φ∘…∘φ(0) for the single-ancestor process, and
// mixing over the root law P(N = 1, 2, 3) = (3, 4, 2)/9 bounds P(R ≤ n).

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "rumor/errors.hpp"
#include "rumor/rational.hpp"

namespace rumor {

/// s ↦ a + b·s / (c − s), with c > 1 so the map is finite on [0, 1].
struct FractionalLinearGF {
  Rational a;
  Rational b;
  Rational c;

  Rational operator()(const Rational& s) const { return a + b * s / (c - s); }

  double operator()(double s) const {
    return to_double(a) + to_double(b) * s / (to_double(c) - s);
  }

  Rational derivative(const Rational& s) const {
    const Rational gap = c - s;
    return b * c / (gap * gap);
  }

  /// n-fold composition evaluated at s, by direct iteration.
  double iterate(std::size_t n, double s) const {
    for (std::size_t i = 0; i < n; ++i) s = (*this)(s);
    return s;
  }
};

/// Best lower fractional linear bound: 13/45 + 128s / (45(5 − s)).
inline FractionalLinearGF lower_bounding_gf() {
  return {Rational(13, 45), Rational(128, 45), Rational(5)};
}

/// Best upper fractional linear bound: 1/3 + 2s / (4 − s).
inline FractionalLinearGF upper_bounding_gf() { return {Rational(1, 3), Rational(2), Rational(4)}; }

/// Offspring pgf for d = 2, k = 1.
inline Rational mt_offspring_pgf(const Rational& s) { return (2 * s * s + 4 * s + 3) / 9; }
inline double mt_offspring_pgf(double s) { return (2.0 * s * s + 4.0 * s + 3.0) / 9.0; }

/// h(s) = φ'(1)·φ'(s)·(1 − s)² − (1 − φ(s))², evaluated from its definition.
/// Negative on [0, 1) certifies the hypotheses of the bounding construction.
inline Rational h_criterion(const Rational& s) {
  if (s < 0 || s > 1) throw InvalidArgument("h_criterion: s must lie in [0, 1]");
  const Rational mean(8, 9);
  const Rational slope = 4 * (s + 1) / 9;
  const Rational one_minus_s = 1 - s;
  const Rational gap = 1 - mt_offspring_pgf(s);
  return mean * slope * one_minus_s * one_minus_s - gap * gap;
}

inline double h_criterion(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("h_criterion: s must lie in [0, 1]");
  const double slope = 4.0 * (s + 1.0) / 9.0;
  const double gap = 1.0 - mt_offspring_pgf(s);
  return (8.0 / 9.0) * slope * (1.0 - s) * (1.0 - s) - gap * gap;
}

template <typename T>
struct Bounds {
  T lower;
  T upper;
};

namespace detail {

inline constexpr double kMeanRatio = 8.0 / 9.0;
inline constexpr double kLowerPole = 13.0 / 9.0;  // from L
inline constexpr double kUpperPole = 4.0 / 3.0;   // from U

// c(1 − qⁿ) / (c − qⁿ) with q = 8/9.
inline double alpha(double pole, std::uint64_t n) {
  const double qn = std::pow(kMeanRatio, static_cast<double>(n));
  return pole * (1.0 - qn) / (pole - qn);
}

inline Rational alpha(const Rational& pole, std::uint64_t n) {
  const Rational qn = rational_pow(Rational(8, 9), static_cast<unsigned>(n));
  return pole * (1 - qn) / (pole - qn);
}

template <typename T>
T mix_over_root(const T& p) {
  return T(3) / 9 * p + T(4) / 9 * p * p + T(2) / 9 * p * p * p;
}

}  // namespace detail

/// (α₁(n), α₂(n)) with α₁(n) ≤ P(T_ext ≤ n) ≤ α₂(n).
inline Bounds<double> extinction_time_cdf_bounds(std::uint64_t n) {
  return {detail::alpha(detail::kLowerPole, n), detail::alpha(detail::kUpperPole, n)};
}

/// Exact rational variant; intended for moderate n.
inline Bounds<Rational> extinction_time_cdf_bounds_exact(std::uint64_t n) {
  return {detail::alpha(Rational(13, 9), n), detail::alpha(Rational(4, 3), n)};
}

/// Bounds on P(R ≤ n) via the cubic (3p + 4p² + 2p³)/9, increasing on [0, 1].
inline Bounds<double> range_cdf_bounds(std::uint64_t n) {
  const auto a = extinction_time_cdf_bounds(n);
  return {detail::mix_over_root(a.lower), detail::mix_over_root(a.upper)};
}

inline Bounds<Rational> range_cdf_bounds_exact(std::uint64_t n) {
  const auto a = extinction_time_cdf_bounds_exact(n);
  return {detail::mix_over_root(a.lower), detail::mix_over_root(a.upper)};
}

/// Enclosure of one series Σ_{n≥0} f(n)^p: partial sum plus a geometric
/// tail bound.
struct SeriesEnclosure {
  int power = 1;
  bool from_upper_cdf_bound = false;  // f = 1 − α₂ (true) or f = 1 − α₁ (false)
  double lower = 0.0;
  double upper = 0.0;
};

struct ExpectedRangeBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// Order: p = 1, 2, 3, each as (Σ(1−α₂)^p, Σ(1−α₁)^p).
  std::array<SeriesEnclosure, 6> series{};
  std::size_t terms = 0;
};

/// E(R) = Σ P(R > n) = (17/9)ΣP(T>n) − (10/9)ΣP(T>n)² + (2/9)ΣP(T>n)³,
/// with each series enclosed between its α₂ and α₁ versions.
inline ExpectedRangeBounds expected_range_bounds(double series_tol = 1e-13) {
  if (!(series_tol > 0.0 && series_tol <= 1e-12)) {
    throw InvalidArgument("series_tol must satisfy 0 < series_tol ≤ 1e-12");
  }
  // 1 − α₂(n) = (1/3)qⁿ / (4/3 − qⁿ);  1 − α₁(n) = (4/9)qⁿ / (13/9 − qⁿ).
  struct Tail {
    long double scale;
    long double pole;
  };
  constexpr std::array<Tail, 2> kinds{{{1.0L / 3.0L, 4.0L / 3.0L}, {4.0L / 9.0L, 13.0L / 9.0L}}};
  const long double q = 8.0L / 9.0L;

  std::array<long double, 6> partial{};
  long double qn = 1.0L;
  std::size_t n = 0;
  for (;; ++n) {
    long double slowest = 0.0L;
    for (std::size_t kind = 0; kind < 2; ++kind) {
      const long double f = kinds[kind].scale * qn / (kinds[kind].pole - qn);
      long double fp = 1.0L;
      for (int p = 1; p <= 3; ++p) {
        fp *= f;
        partial[static_cast<std::size_t>(p - 1) * 2 + kind] += fp;
      }
      slowest = std::max(slowest, f);
    }
    qn *= q;
    if (slowest < series_tol) {
      ++n;
      break;
    }
  }

  ExpectedRangeBounds out;
  out.terms = n;
  // For m ≥ n: f(m) ≤ scale·q^m / (pole − qⁿ), so Σ_{m≥n} f(m)^p ≤ (scale/(pole − qⁿ))^p q^{np} / (1 − q^p).
  for (int p = 1; p <= 3; ++p) {
    for (std::size_t kind = 0; kind < 2; ++kind) {
      const long double ratio = kinds[kind].scale / (kinds[kind].pole - qn);
      const long double tail = std::pow(ratio * qn, p) / (1.0L - std::pow(q, p));
      const long double sum = partial[static_cast<std::size_t>(p - 1) * 2 + kind];
      out.series[static_cast<std::size_t>(p - 1) * 2 + kind] =
          SeriesEnclosure{p, kind == 0, static_cast<double>(sum), static_cast<double>(sum + tail)};
    }
  }
  const auto& s1_lo = out.series[0];
  const auto& s1_hi = out.series[1];
  const auto& s2_lo = out.series[2];
  const auto& s2_hi = out.series[3];
  const auto& s3_lo = out.series[4];
  const auto& s3_hi = out.series[5];
  out.lower = 17.0 / 9.0 * s1_lo.lower - 10.0 / 9.0 * s2_hi.upper + 2.0 / 9.0 * s3_lo.lower;
  out.upper = 17.0 / 9.0 * s1_hi.upper - 10.0 / 9.0 * s2_lo.lower + 2.0 / 9.0 * s3_hi.upper;
  return out;
}

}  // namespace rumor
