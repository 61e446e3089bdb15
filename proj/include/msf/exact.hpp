#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace msf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", an integer, or a finite decimal ("0.25") into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

inline double to_double(const BigInt& z) {
  return z.convert_to<double>();
}

/// Integer power with a possibly negative exponent; base must be nonzero when exponent < 0.
Rational pow(const Rational& base, std::int64_t exponent);

BigInt factorial(std::int64_t k);

/// k-th falling factorial m (m-1) ... (m-k+1).
BigInt falling_factorial(std::int64_t m, std::int64_t k);

BigInt binomial(std::int64_t m, std::int64_t k);

}  // namespace msf
