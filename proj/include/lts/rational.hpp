// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lts {

/// Exact rational number with arbitrary-precision numerator and
/// denominator.  Always normalized (denominator > 0, lowest terms).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(const std::int64_t num,
                              const std::int64_t den = 1) {
  if (den == 0) {
    throw std::domain_error("rational with zero denominator");
  }
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) {
    return numerator_of(r).str();
  }
  return numerator_of(r).str() + "/" + den.str();
}

/// Parses "p", "-p", "p/q".
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    const BigInt num(std::string(text.substr(0, slash)));
    const BigInt den(std::string(text.substr(slash + 1)));
    if (den == 0) {
      throw std::domain_error("rational with zero denominator");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational: " + std::string(text));
  }
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const double x) { return x; }

/// Conversion into a coefficient scalar type (the only place rational
/// values are rounded to floating point).
template <typename Scalar>
Scalar rational_cast(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else {
    return static_cast<Scalar>(r.convert_to<double>());
  }
}

}  // namespace lts
