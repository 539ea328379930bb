#pragma once

#include <string>

#include "rumor/errors.hpp"

namespace rumor {

/// Tree branching degree and stifling threshold of the k-stifling model.
///
/// Every non-root vertex has `d` children and one parent, so every vertex has
/// `d + 1` neighbours. A spreader stops after `k` stifling experiences.
struct ModelParams {
  int d = 2;
  int k = 1;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline void validate(const ModelParams& p) {
  if (p.d < 2) throw InvalidArgument("d must be ≥ 2 (got " + std::to_string(p.d) + ")");
  if (p.k < 1) throw InvalidArgument("k must be ≥ 1 (got " + std::to_string(p.k) + ")");
}

inline ModelParams make_params(int d, int k) {
  ModelParams p{d, k};
  validate(p);
  return p;
}

}  // namespace rumor
