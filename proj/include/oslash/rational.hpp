#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oslash {

// Exact arithmetic for every mass, length, perimeter and function value.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "p/q" and decimal literals such as "0.125".
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

Rational abs(const Rational& q);

// q^e for an integer exponent e >= 0.
Rational pow(const Rational& q, unsigned e);

// Returns q as an int64 if it is an integer that fits.
std::optional<std::int64_t> as_int64(const mpz_class& z);

// Least common multiple of the denominators.
mpz_class common_denominator(const std::vector<Rational>& values);

Rational sum(const std::vector<Rational>& values);

}  // namespace oslash
