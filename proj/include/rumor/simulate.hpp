#pragma once

// Two simulators of the rumour process on the (d+1)-regular tree.
//
// Both use the contact representation: each spreader contacts each of its
// d+1 neighbours at rate 1. Contacting an ignorant turns it into a fresh
// spreader; contacting anyone else is a stifling experience for the
// initiator, and the k-th one makes it a stifler.
//
// Vertices at depth == depth_limit are passive: they can be informed, which
// decides whether that depth was reached, but they never make contacts.
// A run that informs a boundary vertex is censored.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/params.hpp"
#include "rumor/rng.hpp"
#include "rumor/tree.hpp"

namespace rumor {

enum class Engine { kJumpChain, kGenealogy };

inline std::string_view engine_name(Engine e) { return e == Engine::kJumpChain ? "jumpchain" : "genealogy"; }

inline Engine parse_engine(std::string_view name) {
  if (name == "jumpchain") return Engine::kJumpChain;
  if (name == "genealogy") return Engine::kGenealogy;
  throw InvalidArgument("unknown engine '" + std::string(name) + "' (expected jumpchain or genealogy)");
}

inline constexpr std::uint32_t kUnboundedDepth = std::numeric_limits<std::uint32_t>::max();
inline constexpr std::size_t kDefaultVertexBudget = 1'000'000;

struct SimConfig {
  ModelParams params;
  std::uint32_t depth_limit = kUnboundedDepth;
  /// Stream key of the run (see rng.hpp for derivation from a base seed).
  std::uint64_t seed = 0;
  /// End the run as soon as a boundary vertex is informed. Reach events are
  /// unaffected, but root and offspring counts of a stopped run are partial.
  /// When false the run continues until every non-boundary spreader stops.
  bool stop_at_boundary = false;
  /// Start from a spreader whose parent already knows the rumour, i.e. a
  /// single ancestor of the embedded branching process.
  bool single_ancestor = false;
  std::size_t vertex_budget = kDefaultVertexBudget;
  /// Jump chain only: accumulate exponential holding times.
  bool timestamps = false;
};

/// Per-run summary. Depths are distances from the initial spreader.
struct SimOutcome {
  /// Entry j counts vertices at depth j+1 ever informed (Z_j of the
  /// embedded branching process; entry 0 is the root offspring count).
  std::vector<std::uint64_t> generation_counts;
  std::uint32_t max_depth_reached = 0;
  /// Vertices ever informed, excluding the initial spreader.
  std::uint64_t informed_total = 0;
  bool censored = false;
  /// Children informed by the initial spreader (partial if the run stopped early).
  std::uint32_t root_offspring = 0;
  /// Offspring counts of spreaders with a parent that finished their
  /// contact sequence, indexed 0..d.
  std::vector<std::uint64_t> offspring_histogram;
  /// Entry n: total offspring of the finished spreaders at depth n.
  std::vector<std::uint64_t> offspring_by_depth;
  /// Contacts resolved.
  std::uint64_t steps = 0;
  /// Time of the last contact when the run died out (jump chain with timestamps).
  std::optional<double> extinction_time;

  bool reached_depth(std::uint32_t n) const { return n == 0 || max_depth_reached >= n; }

  friend bool operator==(const SimOutcome&, const SimOutcome&) = default;
};

/// No-op observer for state transitions.
struct NoTransitionObserver {
  void operator()(std::uint32_t /*vertex*/, VertexState /*from*/, VertexState /*to*/) const {}
};

namespace detail {

inline void validate_sim(const SimConfig& config) {
  validate(config.params);
  if (config.depth_limit < 1) throw InvalidArgument("depth_limit must be ≥ 1");
  if (config.vertex_budget < 1) throw InvalidArgument("vertex budget must be ≥ 1");
}

inline void bump(std::vector<std::uint64_t>& v, std::size_t index, std::uint64_t by = 1) {
  if (v.size() <= index) v.resize(index + 1, 0);
  v[index] += by;
}

// Bookkeeping for a newly informed vertex at depth `depth` ≥ 1.
inline void record_informed(SimOutcome& out, std::uint32_t depth) {
  bump(out.generation_counts, depth - 1);
  ++out.informed_total;
  if (depth > out.max_depth_reached) out.max_depth_reached = depth;
}

inline void record_finished(SimOutcome& out, bool has_parent, std::uint32_t depth, std::uint32_t offspring) {
  if (has_parent) ++out.offspring_histogram[offspring];
  bump(out.offspring_by_depth, depth, offspring);
}

}  // namespace detail

/// Exact simulation of the embedded jump chain. Every active spreader has
/// the same total contact rate d+1, so each step picks an active spreader
/// uniformly and then one of its d+1 neighbour slots uniformly.
template <typename Observer = NoTransitionObserver>
SimOutcome gillespie_run(const SimConfig& config, Observer&& observer = {}) {
  detail::validate_sim(config);
  const auto d = static_cast<std::uint32_t>(config.params.d);
  const int k = config.params.k;
  const std::uint64_t slots = d + 1;

  SimOutcome out;
  out.offspring_histogram.assign(slots, 0);
  TruncatedTree tree(config.params.d, config.vertex_budget);
  CounterRng rng(config.seed);

  std::vector<std::uint32_t> active;
  std::vector<std::int32_t> position;  // index into `active`, or -1
  std::vector<std::uint32_t> kids;
  double clock = 0.0;

  auto activate = [&](std::uint32_t v) {
    position[v] = static_cast<std::int32_t>(active.size());
    active.push_back(v);
  };
  auto deactivate = [&](std::uint32_t v) {
    const auto at = static_cast<std::size_t>(position[v]);
    active[at] = active.back();
    position[active[at]] = static_cast<std::int32_t>(at);
    active.pop_back();
    position[v] = -1;
  };
  auto has_parent = [&](std::uint32_t v) { return v != 0 || config.single_ancestor; };

  const std::uint32_t root = tree.add_root(VertexState::spreader(0));
  position.push_back(-1);
  kids.push_back(0);
  observer(root, VertexState::ignorant(), VertexState::spreader(0));
  activate(root);

  while (!active.empty()) {
    if (config.timestamps) clock += rng.exponential(static_cast<double>(slots * active.size()));
    const std::uint32_t v = active[rng.below(active.size())];
    const auto slot = static_cast<std::size_t>(rng.below(slots));
    ++out.steps;

    const bool hits_parent = has_parent(v) && slot == 0;
    if (!hits_parent && tree.child(v, slot) == TruncatedTree::kAbsent) {
      const std::uint32_t c = tree.add_child(v, slot, VertexState::spreader(0));
      position.push_back(-1);
      kids.push_back(0);
      observer(c, VertexState::ignorant(), VertexState::spreader(0));
      ++kids[v];
      const std::uint32_t depth = tree.depth(c);
      detail::record_informed(out, depth);
      if (depth < config.depth_limit) {
        activate(c);
      } else {
        out.censored = true;
        if (config.stop_at_boundary) break;
      }
      continue;
    }

    const VertexState before = tree.state(v);
    const VertexState after = VertexState::spreader(before.code() + 1);
    tree.set_state(v, after);
    observer(v, before, after);
    if (after.is_stifler(k)) {
      deactivate(v);
      detail::record_finished(out, has_parent(v), tree.depth(v), kids[v]);
    }
  }

  out.root_offspring = kids[root];
  if (config.timestamps && !out.censored) out.extinction_time = clock;
  return out;
}

inline SimOutcome gillespie_run(const ModelParams& params, std::uint32_t depth_limit, std::uint64_t seed) {
  SimConfig config;
  config.params = params;
  config.depth_limit = depth_limit;
  config.seed = seed;
  return gillespie_run(config);
}

/// Genealogy sampler. Each informed vertex's offspring count is a function
/// of its own contact sequence only: uniform draws over its d+1 neighbour
/// slots, where a first visit to a child slot informs that child and any
/// other draw is a stifling experience. Each vertex draws from its own
/// stream keyed by its position in the tree, so the realised genealogy does
/// not depend on traversal order or on the depth limit.
inline SimOutcome genealogy_run(const SimConfig& config) {
  detail::validate_sim(config);
  const auto d = static_cast<std::uint32_t>(config.params.d);
  const int k = config.params.k;
  const std::uint64_t slots = d + 1;

  SimOutcome out;
  out.offspring_histogram.assign(slots, 0);

  struct Pending {
    std::uint64_t key;
    std::uint32_t depth;
    bool has_parent;
  };
  // Depth-first: surviving lineages reach the boundary without first
  // materialising whole generations.
  std::vector<Pending> stack{{config.seed, 0, config.single_ancestor}};
  std::vector<std::uint8_t> known(slots);
  std::vector<std::uint32_t> informed_slots;
  informed_slots.reserve(slots);
  std::size_t materialised = 1;

  while (!stack.empty()) {
    const Pending v = stack.back();
    stack.pop_back();

    CounterRng rng(v.key);
    std::fill(known.begin(), known.end(), 0);
    if (v.has_parent) known[0] = 1;
    informed_slots.clear();
    for (int stifles = 0; stifles < k;) {
      const auto slot = static_cast<std::uint32_t>(rng.below(slots));
      ++out.steps;
      if (known[slot]) {
        ++stifles;
      } else {
        known[slot] = 1;
        informed_slots.push_back(slot);
      }
    }
    const auto offspring = static_cast<std::uint32_t>(informed_slots.size());
    if (v.depth == 0) out.root_offspring = offspring;
    detail::record_finished(out, v.has_parent, v.depth, offspring);

    const std::uint32_t child_depth = v.depth + 1;
    for (auto it = informed_slots.rbegin(); it != informed_slots.rend(); ++it) {
      if (++materialised > config.vertex_budget) {
        throw ResourceCapExceeded("vertex budget of " + std::to_string(config.vertex_budget) + " exceeded");
      }
      detail::record_informed(out, child_depth);
      if (child_depth >= config.depth_limit) {
        out.censored = true;
        if (config.stop_at_boundary) return out;
        continue;
      }
      stack.push_back({derive_key(v.key, *it), child_depth, true});
    }
  }
  return out;
}

inline SimOutcome genealogy_run(const ModelParams& params, std::uint32_t depth_limit, std::uint64_t seed) {
  SimConfig config;
  config.params = params;
  config.depth_limit = depth_limit;
  config.seed = seed;
  return genealogy_run(config);
}

inline SimOutcome run_engine(Engine engine, const SimConfig& config) {
  return engine == Engine::kJumpChain ? gillespie_run(config) : genealogy_run(config);
}

}  // namespace rumor
