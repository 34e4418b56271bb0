#pragma once

#include "ffdyn/ratfunc.hpp"

#include <vector>

namespace ffdyn {

/// Polynomial in z with coefficients in K = F_Q(t), constant term first.
struct KPoly {
  const GaloisField* field = nullptr;
  std::vector<RatFunc> coeffs;

  KPoly() = default;
  explicit KPoly(const GaloisField& F) : field(&F) {}
  KPoly(const GaloisField& F, std::vector<RatFunc> c);

  static KPoly constant(const RatFunc& c);
  static KPoly z(const GaloisField& F);

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  RatFunc coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : RatFunc(*field); }
  void trim();

  friend KPoly operator+(const KPoly& a, const KPoly& b);
  friend KPoly operator-(const KPoly& a, const KPoly& b);
  friend KPoly operator-(const KPoly& a);
  friend KPoly operator*(const KPoly& a, const KPoly& b);
};

KPoly pow(const KPoly& a, unsigned e);

/// A formal quotient num/den of polynomials in z over K (not reduced).
struct KFrac {
  KPoly num;
  KPoly den;
};

}  // namespace ffdyn
