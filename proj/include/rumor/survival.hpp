#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "rumor/distributions.hpp"
#include "rumor/errors.hpp"
#include "rumor/params.hpp"

namespace rumor {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr std::uint64_t kFixedPointIterationCap = 10'000'000;

/// Smallest root ψ of φ(s) = s on [0, 1].
struct FixedPointResult {
  double psi = 1.0;
  std::uint64_t iterations = 0;
  double residual = 0.0;
  bool converged = false;
  /// True when the exact offspring mean is ≤ 1, so ψ = 1 without iterating.
  bool subcritical = false;
};

namespace detail {

inline double horner(const std::vector<double>& coeffs, double s) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

inline void check_tolerance(double tol) {
  if (!(tol > 0.0 && tol < 1e-6)) throw InvalidArgument("tolerance must satisfy 0 < tol < 1e-6");
}

}  // namespace detail

/// Monotone iteration s_0 = 0, s_{n+1} = φ(s_n). The iterates increase to the
/// smallest fixed point for any pgf; iteration stops when the step drops
/// below `tol`. Criticality is decided by the exact mean, so ψ = 1 is exact.
inline FixedPointResult extinction_fixed_point(const ModelParams& params, double tol = kDefaultTolerance,
                                               std::uint64_t iteration_cap = kFixedPointIterationCap) {
  validate(params);
  detail::check_tolerance(tol);
  const ExactPmf pmf = offspring_pmf(params);
  FixedPointResult out;
  if (pmf.mean() <= 1) {
    out.psi = 1.0;
    out.converged = true;
    out.subcritical = true;
    return out;
  }
  const std::vector<double> coeffs = pmf.dense();
  double s = 0.0;
  bool stepped_below_tol = false;
  while (out.iterations < iteration_cap) {
    const double next = detail::horner(coeffs, s);
    ++out.iterations;
    const double step = next - s;
    s = next;
    if (step < tol) {
      stepped_below_tol = true;
      break;
    }
  }
  out.psi = s;
  out.residual = std::abs(detail::horner(coeffs, s) - s);
  out.converged = stepped_below_tol && out.residual <= tol;
  return out;
}

/// θ(d,k) = 1 − E[ψ^N], N the root offspring count. Throws NonConvergence
/// when the fixed-point solver fails.
inline double survival_probability(const ModelParams& params, double tol = kDefaultTolerance) {
  const FixedPointResult fp = extinction_fixed_point(params, tol);
  if (!fp.converged) {
    throw NonConvergence("fixed-point iteration did not converge for d=" + std::to_string(params.d) +
                         ", k=" + std::to_string(params.k) + " after " + std::to_string(fp.iterations) +
                         " iterations (residual " + std::to_string(fp.residual) + ")");
  }
  if (fp.subcritical) return 0.0;
  return 1.0 - root_pmf(params).pgf(fp.psi);
}

/// Six-decimal rendering used for survival tables.
inline std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

struct ThetaCell {
  ModelParams params;
  std::optional<double> theta;
  std::optional<double> psi;
  std::string error;  // empty on success
};

struct ThetaTable {
  std::vector<int> d_values;
  std::vector<int> k_values;
  /// Row-major by k, then d.
  std::vector<ThetaCell> cells;

  const ThetaCell& at(std::size_t k_index, std::size_t d_index) const {
    return cells.at(k_index * d_values.size() + d_index);
  }
};

/// Survival probabilities on a (k × d) grid. A failing cell records its
/// error and does not abort the rest of the table.
inline ThetaTable theta_table(const std::vector<int>& d_values, const std::vector<int>& k_values,
                              double tol = kDefaultTolerance) {
  ThetaTable table{d_values, k_values, {}};
  table.cells.reserve(d_values.size() * k_values.size());
  for (int k : k_values) {
    for (int d : d_values) {
      ThetaCell cell{ModelParams{d, k}, std::nullopt, std::nullopt, {}};
      try {
        const FixedPointResult fp = extinction_fixed_point(cell.params, tol);
        cell.psi = fp.psi;
        cell.theta = survival_probability(cell.params, tol);
      } catch (const std::exception& e) {
        cell.theta.reset();
        cell.error = e.what();
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace rumor
