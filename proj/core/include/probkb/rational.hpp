#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace probkb {

// Exact arbitrary-precision rational, always canonical (lowest terms,
// positive denominator).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// "3/7", or just "3" when the denominator is 1.
std::string to_fraction(const Rational& r);

// Advisory decimal rendering, rounded to `digits` fractional digits with
// trailing zeros trimmed. Never meant to be parsed back.
std::string to_decimal(const Rational& r, int digits = 9);

// Accepts "1/20", "0.05", ".5", "1", "-3/4". Returns nullopt on anything else.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace probkb
