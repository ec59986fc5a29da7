#include "tropical_theta/rational.hpp"

#include <limits>


namespace trop {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  }
  BigInt value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw ParseError("malformed rational \"" + std::string(whole) + "\"");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  BigInt num = parse_integer(body.substr(0, slash), text);
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
      throw ParseError("zero denominator in \"" + std::string(text) + "\"");
    }
  }
  Rational r(num, den);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  return numerator_of(value).str() + "/" + denominator_of(value).str();
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt g = boost::multiprecision::gcd(a, b);
  BigInt result = (a / g) * b;
  return result < 0 ? BigInt(-result) : result;
}

std::int64_t to_int64(const BigInt& value) {
  if (value > BigInt(std::numeric_limits<std::int64_t>::max()) ||
      value < BigInt(std::numeric_limits<std::int64_t>::min())) {
    throw std::overflow_error("integer " + value.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(value);
}

}  // namespace trop
