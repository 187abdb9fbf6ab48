#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

using Integer = mpz_class;
using Rational = mpq_class;

/// An integer vector; circuits and Graver elements live here.
using IntVector = std::vector<Integer>;

/// Number of bits in the binary expansion of |x|; zero has bit length 0.
/// Equals ceil(log2(|x| + 1)).
std::size_t bit_length(const Integer& x);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Parses "p" or "p/q" in base 10.  Rejects q = 0; normalizes non-coprime
/// input.  Throws Error(kParseError).
Rational parse_rational(std::string_view token);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const IntVector& v);

/// Divides by the gcd of the entries and flips the sign so that the first
/// nonzero entry is positive.  The zero vector is returned unchanged.
IntVector canonical_primitive(IntVector v);

/// Smallest integral multiple of a rational vector with coprime entries and
/// the sign of the input preserved.
IntVector integral_primitive(const std::vector<Rational>& v);

}  // namespace forge
