#ifndef CONGAMES_RATIONAL_HPP
#define CONGAMES_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace congames {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "3", "-1/2", "0.25", "1e-3". Decimal input converts exactly.
// Throws InputError on malformed text.
Rational parse_rational(const std::string& text);
// "0", "-1/2", ...
std::string to_string(const Rational& r);
double to_double(const Rational& r);
// Exact conversion of a finite double (binary expansion).
Rational from_double(double d);

}  // namespace congames

#endif  // CONGAMES_RATIONAL_HPP
