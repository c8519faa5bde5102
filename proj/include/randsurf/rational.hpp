#pragma once

// Exact integer and rational carriers. GMP's C++ classes keep every
// quantity in lowest terms with a positive denominator.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace randsurf {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt to_bigint(std::int64_t v);
Rational make_rational(std::int64_t num, std::int64_t den);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

/// Decimal expansion truncated toward zero after `digits` places ("1.966").
std::string truncated_decimal(const Rational& v, int digits);

/// Decimal expansion rounded half away from zero after `digits` places.
std::string rounded_decimal(const Rational& v, int digits);

/// Accepts "7", "-3/4" and finite decimals such as "1.25".
Rational parse_rational(std::string_view text);

bool is_integer(const Rational& v);

/// Returns the integer value of `v`; throws NonIntegralError naming `what` otherwise.
BigInt require_integer(const Rational& v, std::string_view what);

/// Throws PreconditionError when `v` does not fit.
std::int64_t to_int64(const BigInt& v);

double to_double(const Rational& v);

} // namespace randsurf
