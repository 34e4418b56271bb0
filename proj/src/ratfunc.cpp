#include "ffdyn/ratfunc.hpp"

#include "ffdyn/errors.hpp"

namespace ffdyn {

RatFunc::RatFunc(Poly num) : num_(std::move(num)) {
  den_ = Poly::constant(num_.field(), 1);
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  const GaloisField& F = den_.field();
  if (num_.is_zero()) {
    num_ = Poly(F);
    den_ = Poly::constant(F, 1);
    return;
  }
  if (!den_.is_one()) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  if (!den_.is_monic()) {
    auto inv = F.inv(den_.lead());
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
  // Cross-cancel before multiplying to keep intermediate degrees small.
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  RatFunc r;
  r.num_ = exact_div(a.num_, g1) * exact_div(b.num_, g2);
  r.den_ = exact_div(a.den_, g2) * exact_div(b.den_, g1);
  r.normalize();
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc pow(const RatFunc& a, long long e) {
  if (e < 0) return pow(a.inverse(), -e);
  RatFunc result = RatFunc::constant(a.field(), 1);
  RatFunc b = a;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

RatFunc embed(const RatFunc& a, const GaloisField& ext) {
  return RatFunc(embed(a.num(), ext), embed(a.den(), ext));
}

}  // namespace ffdyn
