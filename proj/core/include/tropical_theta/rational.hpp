#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace trop {

// Expression templates are disabled so that std::min and friends work on
// plain values.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q" or "p" with optional leading minus; no decimals, no spaces.
Rational parse_rational(std::string_view text);

/// Always "p/q" in lowest terms, denominator positive (integers print as "p/1").
std::string to_string(const Rational& value);

BigInt lcm(const BigInt& a, const BigInt& b);

/// Throws std::overflow_error when |value| does not fit.
std::int64_t to_int64(const BigInt& value);

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

}  // namespace trop
