#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/rational.hpp"

namespace rumor {

/// Finite-support probability mass function on the non-negative integers with
/// exact masses. A defective pmf sums to less than one; the missing mass is
/// kept in `deficit()`.
class ExactPmf {
 public:
  struct Entry {
    std::uint64_t value;
    Rational mass;
  };

  ExactPmf() = default;

  /// Throws InvalidArgument on negative masses, non-increasing support, or
  /// total mass other than one (or above one when `defective`).
  explicit ExactPmf(std::vector<Entry> entries, bool defective = false)
      : entries_(std::move(entries)), defective_(defective) {
    Rational total = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].mass < 0) throw InvalidArgument("negative probability mass");
      if (i > 0 && entries_[i].value <= entries_[i - 1].value) {
        throw InvalidArgument("pmf support must be strictly increasing");
      }
      total += entries_[i].mass;
    }
    if (defective_) {
      if (total > 1) throw InvalidArgument("defective pmf has mass above one");
    } else if (total != 1) {
      throw InvalidArgument("pmf masses sum to " + to_fraction_string(total) + ", not 1");
    }
    deficit_ = 1 - total;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool defective() const { return defective_; }
  const Rational& deficit() const { return deficit_; }

  Rational total_mass() const { return 1 - deficit_; }

  /// Mass at `value`; zero off the support.
  Rational mass(std::uint64_t value) const {
    for (const auto& e : entries_) {
      if (e.value == value) return e.mass;
    }
    return 0;
  }

  Rational mean() const {
    Rational m = 0;
    for (const auto& e : entries_) m += e.mass * e.value;
    return m;
  }

  std::uint64_t max_value() const { return entries_.empty() ? 0 : entries_.back().value; }

  /// Dense float projection indexed by value, length max_value() + 1.
  std::vector<double> dense() const {
    std::vector<double> out(entries_.empty() ? 0 : max_value() + 1, 0.0);
    for (const auto& e : entries_) out[e.value] = to_double(e.mass);
    return out;
  }

  /// Generating function E[s^V] in floating point (Horner over the dense form).
  double pgf(double s) const {
    const auto coeffs = dense();
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  Rational pgf(const Rational& s) const {
    Rational acc = 0;
    for (const auto& e : entries_) acc += e.mass * rational_pow(s, static_cast<unsigned>(e.value));
    return acc;
  }

 private:
  std::vector<Entry> entries_;
  bool defective_ = false;
  Rational deficit_ = 0;
};

}  // namespace rumor
