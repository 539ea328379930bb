#pragma once

#include <cstddef>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/rational.hpp"

namespace rumor {

/// Polynomial with arbitrary-precision integer coefficients; index = power.
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static IntPolynomial one() { return IntPolynomial({BigInt(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  BigInt coefficient(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : BigInt(0);
  }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return IntPolynomial(std::move(out));
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// Schoolbook repeated multiplication.
  IntPolynomial pow(unsigned exponent) const {
    IntPolynomial out = one();
    for (unsigned i = 0; i < exponent; ++i) out = out * *this;
    return out;
  }

  /// Greatest common divisor of the coefficients (zero for the zero polynomial).
  BigInt content() const {
    BigInt g = 0;
    for (const auto& c : coeffs_) g = boost::multiprecision::gcd(g, c);
    return g;
  }

  /// First `count` coefficients of this polynomial raised to `exponent`,
  /// without forming the full power. Uses the recurrence obtained from
  /// g·f' = n·g'·f for f = g^n:
  ///   m·g0·f_m = Σ_{j=1}^{min(m,deg)} ((n+1)·j − m)·g_j·f_{m−j},
  /// in which every division is exact. Requires a non-zero constant term.
  std::vector<BigInt> power_prefix(unsigned exponent, std::size_t count) const {
    if (coeffs_.empty() || coeffs_[0] == 0) {
      throw InvalidArgument("power_prefix needs a non-zero constant term");
    }
    std::vector<BigInt> f(count, BigInt(0));
    if (count == 0) return f;
    f[0] = big_pow(coeffs_[0], exponent);
    const long deg = degree();
    const long n1 = static_cast<long>(exponent) + 1;
    for (std::size_t m = 1; m < count; ++m) {
      BigInt acc = 0;
      const long mm = static_cast<long>(m);
      for (long j = 1; j <= std::min(mm, deg); ++j) {
        const long weight = n1 * j - mm;
        if (weight == 0 || coeffs_[j] == 0) continue;
        acc += weight * coeffs_[j] * f[m - j];
      }
      f[m] = acc / (coeffs_[0] * mm);
    }
    return f;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<BigInt> coeffs_;
};

}  // namespace rumor
