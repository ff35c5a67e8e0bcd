#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace irmlab {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational. All probabilities, losses and risks are kept
/// exact in this type unless the caller explicitly asks for float mode.
using Rational = boost::multiprecision::cpp_rational;

using RationalVec = std::vector<Rational>;

/// Parses "num/den" or a bare integer "num". Throws StructuralError on
/// malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

/// Canonical wire form "num/den" (reduced, positive denominator, den printed
/// even when 1 — e.g. "1/1", "0/1", "-3/4").
std::string format_rational(const Rational& q);

/// Advisory decimal rendering (shortest round-trippable-ish "%.12g").
std::string format_decimal(double value);

double to_double(const Rational& q);

Rational vec_sum(const RationalVec& v);

/// Entries non-negative and summing to exactly 1.
bool is_probability_vector(const RationalVec& v);

/// Squared Euclidean distance between two coordinate vectors of equal size.
Rational squared_distance(const RationalVec& a, const RationalVec& b);

} // namespace irmlab
