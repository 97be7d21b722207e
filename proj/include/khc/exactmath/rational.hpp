#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace khc {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

/// Parses "p" or "p/q" (optional sign, q > 0 after sign normalization).
/// Throws SchemaError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Parses a comma separated list of rationals; an empty string gives an empty vector.
RatVector parse_rational_list(std::string_view text);

/// Canonical "p/q" form (just "p" when q == 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

std::vector<std::string> to_strings(std::span<const Rational> v);

bool is_integer(const Rational& q);

Integer lcm_of_denominators(std::span<const Rational> v);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace khc
