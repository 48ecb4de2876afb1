#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ncm {

using Rational = mpq_class;

// "3", "-3", "3/4". Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// Canonical "<int>" or "<int>/<posint>".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

}  // namespace ncm
