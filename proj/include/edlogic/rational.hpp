#pragma once

// Exact rational arithmetic. Every quantity in the library is an exact
// rational; no floating point is used anywhere in the computation paths.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace edlogic {

using Rat = mpq_class;

// Makes a canonical rational from numerator/denominator.
Rat make_rat(long num, long den = 1);

// Parses "p", "-p", "p/q", or a decimal literal such as "0.23" (converted
// exactly, 0.23 -> 23/100). Throws FormatError on anything else.
Rat parse_rational(std::string_view text);

// Renders as "p/q", or just "p" when the denominator is 1.
std::string rat_str(const Rat& r);

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_negative(const Rat& r) { return sgn(r) < 0; }
inline bool is_positive(const Rat& r) { return sgn(r) > 0; }

}  // namespace edlogic
