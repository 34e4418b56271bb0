#pragma once

#include "ffdyn/poly.hpp"

namespace ffdyn {

/// Element of F_Q(t) in lowest terms with a monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const GaloisField& field) : num_(field), den_(Poly::constant(field, 1)) {}
  RatFunc(Poly num);  // NOLINT: polynomials are rational functions
  RatFunc(Poly num, Poly den);

  static RatFunc constant(const GaloisField& field, GaloisField::Elem c) {
    return RatFunc(Poly::constant(field, c));
  }

  const GaloisField& field() const { return den_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  /// Constant, i.e. an element of the constant field.
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }

  RatFunc inverse() const;

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

RatFunc pow(const RatFunc& a, long long e);
RatFunc embed(const RatFunc& a, const GaloisField& ext);

}  // namespace ffdyn
