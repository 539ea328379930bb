#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/params.hpp"
#include "rumor/rng.hpp"
#include "rumor/simulate.hpp"

namespace rumor {

/// Point estimate with a standard error; the error is absent when the
/// sample is too small to estimate it.
struct Estimate {
  double value = 0.0;
  std::optional<double> std_error;
  std::uint64_t sample_size = 0;
};

inline Estimate proportion_estimate(std::uint64_t hits, std::uint64_t n) {
  Estimate e;
  e.sample_size = n;
  if (n == 0) return e;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  if (n >= 2) e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

/// Σ|p_i − q_i| / 2 over the union of supports (missing entries are zero).
inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < p.size() ? p[i] : 0.0;
    const double b = i < q.size() ? q[i] : 0.0;
    acc += std::abs(a - b);
  }
  return acc / 2.0;
}

struct McOptions {
  std::uint64_t runs = 10'000;
  std::uint32_t depth_limit = 50;
  Engine engine = Engine::kGenealogy;
  std::uint64_t base_seed = 0;
  unsigned jobs = 1;
  bool stop_at_boundary = false;
  bool single_ancestor = false;
  std::size_t vertex_budget = kDefaultVertexBudget;
};

/// Order-insensitive aggregate of many runs. Everything is an integer count
/// or sum, so merging in any order gives identical results.
struct McSummary {
  ModelParams params;
  McOptions options;

  std::uint64_t completed = 0;  // runs that finished without hitting the vertex budget
  std::uint64_t failures = 0;   // runs aborted by the vertex budget
  std::uint64_t censored = 0;
  std::uint64_t steps = 0;
  std::vector<std::uint64_t> root_offspring_counts;
  std::vector<std::uint64_t> max_depth_counts;
  std::vector<std::uint64_t> offspring_counts;
  /// informed_total over uncensored runs.
  std::map<std::uint64_t, std::uint64_t> informed_total_counts;
  std::uint64_t informed_sum = 0;
  unsigned __int128 informed_sum_squares = 0;

  void add(const SimOutcome& o) {
    ++completed;
    steps += o.steps;
    if (o.censored) ++censored;
    detail::bump(root_offspring_counts, o.root_offspring);
    detail::bump(max_depth_counts, o.max_depth_reached);
    if (offspring_counts.size() < o.offspring_histogram.size()) offspring_counts.resize(o.offspring_histogram.size(), 0);
    for (std::size_t i = 0; i < o.offspring_histogram.size(); ++i) offspring_counts[i] += o.offspring_histogram[i];
    if (!o.censored) {
      ++informed_total_counts[o.informed_total];
      informed_sum += o.informed_total;
      informed_sum_squares += static_cast<unsigned __int128>(o.informed_total) * o.informed_total;
    }
  }

  void merge(const McSummary& other) {
    completed += other.completed;
    failures += other.failures;
    censored += other.censored;
    steps += other.steps;
    auto add_vec = [](std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
      if (into.size() < from.size()) into.resize(from.size(), 0);
      for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
    };
    add_vec(root_offspring_counts, other.root_offspring_counts);
    add_vec(max_depth_counts, other.max_depth_counts);
    add_vec(offspring_counts, other.offspring_counts);
    for (const auto& [value, count] : other.informed_total_counts) informed_total_counts[value] += count;
    informed_sum += other.informed_sum;
    informed_sum_squares += other.informed_sum_squares;
  }

  std::uint64_t uncensored() const { return completed - censored; }

  static std::vector<double> normalise(const std::vector<std::uint64_t>& counts) {
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    std::vector<double> out(counts.size(), 0.0);
    if (total == 0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return out;
  }

  std::vector<double> root_offspring_pmf() const { return normalise(root_offspring_counts); }
  std::vector<double> offspring_pmf() const { return normalise(offspring_counts); }
  std::vector<double> max_depth_pmf() const { return normalise(max_depth_counts); }

  /// Empirical P(informed_total = i) among completed runs; censored runs
  /// contribute to the denominator only.
  std::vector<double> informed_total_pmf() const {
    std::vector<double> out(informed_total_counts.empty() ? 0 : informed_total_counts.rbegin()->first + 1, 0.0);
    if (completed == 0) return out;
    for (const auto& [value, count] : informed_total_counts) {
      out[value] = static_cast<double>(count) / static_cast<double>(completed);
    }
    return out;
  }

  /// Fraction of completed runs that informed a vertex at the depth limit.
  Estimate survival_to_depth() const { return proportion_estimate(censored, completed); }

  Estimate censoring_rate() const { return survival_to_depth(); }

  /// Empirical P(max depth reached ≤ n); meaningful for n < depth_limit.
  Estimate max_depth_cdf(std::uint32_t n) const {
    std::uint64_t hits = 0;
    for (std::size_t i = 0; i < max_depth_counts.size() && i <= n; ++i) hits += max_depth_counts[i];
    return proportion_estimate(hits, completed);
  }

  /// Sample mean of informed_total over uncensored runs.
  Estimate mean_informed_total() const {
    Estimate e;
    const std::uint64_t n = uncensored();
    e.sample_size = n;
    if (n == 0) return e;
    const double mean = static_cast<double>(informed_sum) / static_cast<double>(n);
    e.value = mean;
    if (n >= 2) {
      const long double sum = informed_sum;
      const long double ss = static_cast<long double>(informed_sum_squares);
      const long double var = (ss - sum * sum / n) / (n - 1);
      e.std_error = std::sqrt(static_cast<double>(std::max<long double>(var, 0.0L)) / static_cast<double>(n));
    }
    return e;
  }
};

/// Seed of run `index` under `base_seed`.
inline std::uint64_t run_seed(std::uint64_t base_seed, std::uint64_t index) { return derive_key(base_seed, index); }

/// Independent runs with per-run seeds derived from (base_seed, run index).
/// Runs that exceed the vertex budget are counted in `failures`.
inline McSummary monte_carlo(const ModelParams& params, const McOptions& options) {
  validate(params);
  if (options.runs < 1) throw InvalidArgument("runs must be ≥ 1");
  if (options.depth_limit < 1) throw InvalidArgument("depth_limit must be ≥ 1");
  const unsigned jobs = static_cast<unsigned>(
      std::clamp<std::uint64_t>(options.jobs == 0 ? 1 : options.jobs, 1, options.runs));

  std::vector<McSummary> partial(jobs);
  auto worker = [&](unsigned lane) {
    McSummary& acc = partial[lane];
    SimConfig config;
    config.params = params;
    config.depth_limit = options.depth_limit;
    config.stop_at_boundary = options.stop_at_boundary;
    config.single_ancestor = options.single_ancestor;
    config.vertex_budget = options.vertex_budget;
    for (std::uint64_t run = lane; run < options.runs; run += jobs) {
      config.seed = run_seed(options.base_seed, run);
      try {
        acc.add(run_engine(options.engine, config));
      } catch (const ResourceCapExceeded&) {
        ++acc.failures;
      }
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned lane = 0; lane < jobs; ++lane) threads.emplace_back(worker, lane);
    for (auto& t : threads) t.join();
  }

  McSummary summary;
  summary.params = params;
  summary.options = options;
  for (const auto& p : partial) summary.merge(p);
  return summary;
}

inline unsigned default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

}  // namespace rumor
