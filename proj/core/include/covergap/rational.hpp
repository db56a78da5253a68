#pragma once

#include <cstdint>
#include <span>
#include <string>

#include <gmpxx.h>

namespace covergap {

// All proof-critical comparisons run on exact rationals; nothing in the
// certification path ever rounds.
using Rational = mpq_class;

// Normalized fraction with the sign carried by the numerator.
Rational rat(const mpz_class& numerator, const mpz_class& denominator);
Rational rat(long numerator, long denominator);

// Exact sum of 1/d over the entries (multiset semantics, duplicates count).
Rational reciprocal_sum(std::span<const std::uint64_t> ds);

// Decimal rendering truncated toward zero to `digits` fractional digits,
// e.g. 1.5434041 for 7 digits.  Used for display and for comparing against
// reference decimals; certificates always carry the exact fraction too.
std::string truncated_decimal(const Rational& x, int digits);

// |x - parse(decimal)| as an exact rational, for tolerance checks against
// printed reference values.
Rational decimal_distance(const Rational& x, const std::string& decimal);

// Parse a plain decimal literal like "0.933333" or "1.0166667".
Rational rational_from_decimal(const std::string& decimal);

// Reconstruct from decimal integer strings (certificate replay).
Rational rational_from_strings(const std::string& num, const std::string& den);

} // namespace covergap
