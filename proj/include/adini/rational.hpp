#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace adini {

/// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

inline double to_double(const Rational& q) { return q.get_d(); }

std::vector<double> to_double(const RationalVector& v);

/// Exact binary value of a finite double.
Rational exact_rational(double x);

/// Parses "p", "p/q" or a decimal literal such as "-0.125" or "2.5e-3" exactly.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p" for integers, otherwise "p/q".
std::string to_string(const Rational& q);

Rational factorial(unsigned n);

Rational pow(const Rational& base, unsigned exponent);

}  // namespace adini
