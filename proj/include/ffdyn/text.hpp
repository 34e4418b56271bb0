#pragma once

#include "ffdyn/kpoly.hpp"
#include "ffdyn/ratfunc.hpp"

#include <string>
#include <string_view>

namespace ffdyn {

// Text syntax. Polynomials in t (or z for maps) with +, -, *, /, ^ and
// parentheses; constants of F_{p^m} are integers (reduced mod p) and powers of
// the generator symbol g. Printing is canonical: terms by descending degree,
// coefficients as nonnegative representatives, so
// format(parse(format(x))) == format(x) byte for byte.

std::string format_elem(const GaloisField& F, GaloisField::Elem a);
std::string format_poly(const Poly& p, char var = 't');
/// "num" when the denominator is 1, otherwise "(num)/(den)".
std::string format_ratfunc(const RatFunc& r);
/// Polynomial in z whose coefficients are polynomials in t.
std::string format_zpoly(const std::vector<Poly>& coeffs);

GaloisField::Elem parse_elem(const GaloisField& F, std::string_view text);
RatFunc parse_ratfunc(const GaloisField& F, std::string_view text);
/// Throws ValidationError when the expression is not a polynomial.
Poly parse_poly(const GaloisField& F, std::string_view text);
/// Rational expression in z over F_Q(t), returned unreduced.
KFrac parse_zexpr(const GaloisField& F, std::string_view text);

}  // namespace ffdyn
