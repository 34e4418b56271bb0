#include "ffdyn/kpoly.hpp"

namespace ffdyn {

KPoly::KPoly(const GaloisField& F, std::vector<RatFunc> c) : field(&F), coeffs(std::move(c)) { trim(); }

KPoly KPoly::constant(const RatFunc& c) { return KPoly(c.field(), {c}); }

KPoly KPoly::z(const GaloisField& F) {
  return KPoly(F, {RatFunc(F), RatFunc::constant(F, 1)});
}

void KPoly::trim() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
}

KPoly operator+(const KPoly& a, const KPoly& b) {
  KPoly r(*a.field);
  r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), RatFunc(*a.field));
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = a.coeff(i) + b.coeff(i);
  r.trim();
  return r;
}

KPoly operator-(const KPoly& a) {
  KPoly r = a;
  for (auto& c : r.coeffs) c = -c;
  return r;
}

KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }

KPoly operator*(const KPoly& a, const KPoly& b) {
  KPoly r(*a.field);
  if (a.is_zero() || b.is_zero()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, RatFunc(*a.field));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  r.trim();
  return r;
}

KPoly pow(const KPoly& a, unsigned e) {
  KPoly r = KPoly::constant(RatFunc::constant(*a.field, 1));
  for (unsigned i = 0; i < e; ++i) r = r * a;
  return r;
}

}  // namespace ffdyn
