#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ffdyn {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "a/b" with b > 1, or "a" when the value is integral.
std::string to_string(const Rational& r);

// Accepts "a", "-a", "a/b". Throws ValidationError on malformed text or b = 0.
Rational parse_rational(std::string_view text);

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Smallest integer >= r.
Integer ceil(const Rational& r);

}  // namespace ffdyn
