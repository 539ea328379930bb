#pragma once

// Counter-based random streams.
//
// Every stream is SplitMix64: output i is mix(key + (i+1)·γ) with
// γ = 0x9e3779b97f4a7c15 and the Stafford "variant 13" finaliser. A stream is
// identified by a 64-bit key and keys are derived hierarchically:
//   run key    = derive_key(base_seed, run_index)
//   vertex key = derive_key(parent vertex key, neighbour slot)
// Bounded integers use Lemire's multiply-shift with rejection, so results
// depend only on the integer outputs and are identical across platforms.

#include <cmath>
#include <cstdint>

namespace rumor {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child key for stream `index` under `parent`.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
  return mix64(mix64(parent + kGolden) ^ (index * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  constexpr result_type operator()() {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
  }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential variate with the given rate.
  double exponential(double rate) { return -std::log1p(-uniform01()) / rate; }

  constexpr std::uint64_t key() const { return key_; }
  constexpr std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rumor
