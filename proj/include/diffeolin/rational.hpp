#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace diffeolin {

/// Exact rational scalar. All symbolic computations run over Q.
using Rational = mpq_class;

/// Parses "p/q" or an integer literal with optional sign. Floating point
/// notation is rejected. Throws std::invalid_argument on malformed input or
/// a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace diffeolin
