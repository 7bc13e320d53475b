#pragma once

#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace toboggan {

/// Exact rational arithmetic for exponents and angle bookkeeping.
/// boost::rational keeps values canonical (gcd-reduced, positive denominator).
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

inline bool is_even_integer(const Rational& r) {
  return r.denominator() == 1 && r.numerator() % 2 == 0;
}

/// Parses "3", "-2/3", "10/4" (normalized to 5/2).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

/// Formats r as a multiple of pi: 0, "pi", "-pi/2", "5pi/12", "-2pi", ...
std::string pi_multiple_string(const Rational& r);

}  // namespace toboggan
