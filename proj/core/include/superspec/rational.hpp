#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace superspec {

/// Exact rational scalar. GMP keeps numerator/denominator coprime with a
/// positive denominator after every arithmetic operation.
using Rational = mpq_class;

/// Dense column vector over the rationals.
using Vector = std::vector<Rational>;

/// Parses "a", "-a", "a/b" (b nonzero). Leading '+' is accepted.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

bool is_zero(const Vector& v);

}  // namespace superspec
