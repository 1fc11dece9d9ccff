#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace bbp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "p/q" or "a^k" style exact integers/rationals ("10^10" is
/// accepted as a convenience for large scale parameters). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

/// Nearest integer with ties broken toward the even integer.
Integer round_half_even(const Rational& x);

Integer int_gcd(const Integer& a, const Integer& b);
Integer int_lcm(const Integer& a, const Integer& b);

/// gcd of |entries|, 0 for an all-zero (or empty) vector.
Integer vector_gcd(const std::vector<Integer>& v);

int sign_of(const Rational& q);

}  // namespace bbp
