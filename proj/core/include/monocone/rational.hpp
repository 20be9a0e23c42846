#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace monocone {

using BigInt = mpz_class;
/// Exact rational. mpq_class keeps values canonical (den > 0, gcd 1) after
/// every arithmetic operation; values built from strings go through
/// parse_rational which canonicalizes.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Accepts "p", "p/q" and "-p/q". Throws Error(kParseError) on junk or a
/// zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);
std::string to_string(const RationalVector& values);

Rational dot(const RationalVector& a, const RationalVector& b);

bool is_zero(const RationalVector& v);

}  // namespace monocone
