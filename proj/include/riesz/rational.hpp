#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace riesz {

/// Exact scalar field for every lattice in the project. mpq_class keeps
/// values canonical (lowest terms, positive denominator) after each
/// arithmetic operation.
using Rational = mpq_class;

/// Parses "p/q" or "p" (optional leading '-'). Rejects zero denominators,
/// whitespace, decimals and anything else; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" rendering; inverse of parse_rational.
std::string to_string(const Rational& value);

/// Non-authoritative decimal rendering used by --approx output.
std::string to_decimal(const Rational& value, int digits = 12);

/// num/den in lowest terms; den must be nonzero.
Rational ratio(std::int64_t num, std::int64_t den);

/// 2^exponent, exact for negative exponents too.
Rational pow2(int exponent);

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }

}  // namespace riesz
