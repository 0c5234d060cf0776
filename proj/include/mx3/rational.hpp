#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mx3 {

// Exact rational used for all Fourier and probability bookkeeping.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);
double to_double(const Rational& r);

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "a/b", integers, and finite decimals ("0.25", "-1.5e-2").
Rational parse_rational(std::string_view text);

// True iff the reduced denominator is a power of two.
bool is_dyadic(const Rational& r);

}  // namespace mx3
