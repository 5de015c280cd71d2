#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace lrsynth {

/// Exact rational number. GMP keeps every value canonical (lowest terms,
/// positive denominator), so equality is structural.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal ("0.25", "-1.5e-2" is rejected).
/// Decimals are converted exactly: "0.1" is 1/10.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// num/den in canonical form. (The two-argument mpq_class constructor does
/// not reduce, so 2/4 built that way would compare unequal to 1/2.)
/// Throws std::invalid_argument when den is 0.
Rational ratio(long num, long den);

Rational sum(const std::vector<Rational>& values);

}  // namespace lrsynth
