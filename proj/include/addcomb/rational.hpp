#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace addcomb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(const BigInt& num, const BigInt& den) { return Rational(num, den); }

// count / 2^bits
inline Rational dyadic(const BigInt& count, unsigned bits) {
  return Rational(count, BigInt(1) << bits);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p/q" (or "p" when q == 1).
inline std::string to_string(const Rational& r) {
  const auto num = boost::multiprecision::numerator(r);
  const auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Integer power with a nonnegative exponent.
inline Rational pow(const Rational& base, unsigned exp) {
  Rational out = 1;
  for (unsigned i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace addcomb
