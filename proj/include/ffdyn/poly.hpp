#pragma once

#include "ffdyn/gf.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace ffdyn {

/// Dense univariate polynomial over a GaloisField, constant term first.
///
/// The zero polynomial has an empty coefficient vector and degree -1. A
/// default-constructed Poly is the zero polynomial with no field attached;
/// it may be compared and copied but not used in arithmetic.
class Poly {
 public:
  using Elem = GaloisField::Elem;

  Poly() = default;
  explicit Poly(const GaloisField& field) : field_(&field) {}
  Poly(const GaloisField& field, std::vector<Elem> coeffs);

  static Poly constant(const GaloisField& field, Elem c);
  static Poly monomial(const GaloisField& field, Elem c, std::size_t degree);
  /// The variable t.
  static Poly variable(const GaloisField& field) { return monomial(field, 1, 1); }

  const GaloisField& field() const { return *field_; }
  const GaloisField* field_ptr() const { return field_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Elem lead() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  Elem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<Elem>& coeffs() const { return coeffs_; }

  Poly monic() const;
  Poly scaled(Elem c) const;
  /// Multiplication by t^k.
  Poly shifted(std::size_t k) const;
  Poly derivative() const;
  Elem eval(Elem x) const;
  /// t^n p(1/t) for n >= deg p.
  Poly reversed(std::size_t n) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b);
  friend Poly operator%(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
  /// Degree first, then coefficients from the top down in encoding order.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  std::size_t hash() const;

 private:
  void trim();

  const GaloisField* field_ = nullptr;
  std::vector<Elem> coeffs_;
};

/// Quotient and remainder; throws DomainError on division by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Exact quotient; throws DomainError when b does not divide a.
Poly exact_div(const Poly& a, const Poly& b);

/// Monic gcd (zero when both inputs are zero).
Poly gcd(Poly a, Poly b);

struct Bezout {
  Poly gcd;  // monic
  Poly u;
  Poly v;    // a*u + b*v = gcd
};
Bezout xgcd(const Poly& a, const Poly& b);

/// base^e mod modulus.
Poly powmod(Poly base, std::uint64_t e, const Poly& modulus);
/// base^(q^k) mod modulus by k applications of the q-power Frobenius.
Poly frobenius_pow(const Poly& base, std::uint32_t k, const Poly& modulus);

Poly pow(const Poly& base, std::uint64_t e);

/// Image of p under the canonical embedding of its field into `ext`.
Poly embed(const Poly& p, const GaloisField& ext);

bool is_irreducible(const Poly& f);

struct PolyHash {
  std::size_t operator()(const Poly& p) const { return p.hash(); }
};

}  // namespace ffdyn
