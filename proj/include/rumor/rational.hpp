#pragma once

// Exact arithmetic carriers. Arbitrary-precision integers and always-reduced
// rationals come from Boost.Multiprecision (header-only backend).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "rumor/errors.hpp"

namespace rumor {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  return Rational(num, den);
}

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

/// Inverse of to_fraction_string. Accepts "p", "-p", "p/q".
inline Rational parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    const BigInt num(std::string(text.substr(0, slash)));
    const BigInt den(std::string(text.substr(slash + 1)));
    return make_rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("malformed fraction: " + std::string(text));
  }
}

inline BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

inline BigInt binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt out = 1;
  // out stays integral: after step i it equals C(n - r + i, i)
  for (unsigned i = 1; i <= r; ++i) {
    out *= n - r + i;
    out /= i;
  }
  return out;
}

inline BigInt big_pow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

inline Rational rational_pow(const Rational& base, unsigned exponent) {
  return Rational(big_pow(numerator_of(base), exponent), big_pow(denominator_of(base), exponent));
}

}  // namespace rumor
