#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace soscert {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading sign). Throws FormatError.
Rational parse_rational(std::string_view text);

/// Canonical "p" or "p/q" form.
std::string to_string(const Rational& q);

/// Nearest multiple of 1/denominator (ties away from zero).
Rational round_to_denominator(double value, const Integer& denominator);

/// Best rational approximation with denominator at most `max_denominator`
/// (continued fractions).
Rational approximate(double value, long max_denominator);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace soscert
