#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace rcpoly {

/// Exact arbitrary-precision rational. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p" (optional leading '-'); throws FormatError on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p".
std::string to_string(const Rational& value);

std::vector<Rational> parse_rationals(const std::vector<std::string>& texts);
std::vector<std::string> to_strings(const std::vector<Rational>& values);

}  // namespace rcpoly
