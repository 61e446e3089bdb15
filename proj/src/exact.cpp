#include "msf/exact.hpp"

#include <cctype>

namespace msf {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    BigInt den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = text.substr(dot + 1);
  const bool negative = !int_part.empty() && int_part[0] == '-';
  if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) {
    int_part.remove_prefix(1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  if (!frac_part.empty() && (frac_part[0] == '-' || frac_part[0] == '+')) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  BigInt whole = int_part.empty() ? BigInt(0) : parse_integer(int_part, text);
  BigInt frac = frac_part.empty() ? BigInt(0) : parse_integer(frac_part, text);
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  Rational value = Rational(whole) + Rational(frac, scale);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

std::string to_string(const BigInt& z) { return z.str(); }

Rational pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero raised to a negative power");
    return pow(Rational(1) / base, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  auto e = static_cast<std::uint64_t>(exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    e >>= 1U;
    if (e != 0) b *= b;
  }
  return result;
}

BigInt factorial(std::int64_t k) { return falling_factorial(k, k); }

BigInt falling_factorial(std::int64_t m, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("negative falling factorial length");
  BigInt result = 1;
  for (std::int64_t i = 0; i < k; ++i) result *= (m - i);
  return result;
}

BigInt binomial(std::int64_t m, std::int64_t k) {
  if (k < 0 || k > m) return 0;
  return falling_factorial(m, k) / factorial(k);
}

}  // namespace msf
