#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace moller {

// mpq_class keeps values canonical (lowest terms, positive denominator)
// as long as every constructor from a numerator/denominator pair is
// followed by canonicalize(); make_rational does that.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

} // namespace moller
