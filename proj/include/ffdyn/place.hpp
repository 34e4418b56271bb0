#pragma once

#include "ffdyn/factor.hpp"
#include "ffdyn/ratfunc.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace ffdyn {

/// Closed point of the base line P^1 over the constant field: either a monic
/// irreducible polynomial or the point at infinity.
class Place {
 public:
  static Place infinity(const GaloisField& field) { return Place(field); }
  /// Throws DomainError unless `pi` is monic irreducible.
  static Place finite(Poly pi);
  /// For factors that are already known to be monic irreducible.
  static Place finite_trusted(Poly pi) {
    const GaloisField& F = pi.field();
    return Place(F, std::move(pi));
  }

  bool is_infinite() const { return !uniformizer_.has_value(); }
  const Poly& uniformizer() const { return *uniformizer_; }
  const GaloisField& field() const { return *field_; }
  /// Degree over the constant field (1 for infinity).
  int degree() const { return is_infinite() ? 1 : uniformizer_->degree(); }

  /// Infinity first, then finite places by (degree, coefficients).
  friend std::strong_ordering operator<=>(const Place& a, const Place& b);
  friend bool operator==(const Place& a, const Place& b);

 private:
  explicit Place(const GaloisField& field) : field_(&field) {}
  Place(const GaloisField& field, Poly pi) : field_(&field), uniformizer_(std::move(pi)) {}

  const GaloisField* field_;
  std::optional<Poly> uniformizer_;
};

/// Valuation; ord at infinity of a polynomial p is -deg p. Throws DomainError on 0.
int ord(const Place& v, const Poly& a);
int ord(const Place& v, const RatFunc& a);

/// Sum over places of deg(v) * ord_v(a); zero for every nonzero a.
long long product_formula_defect(const RatFunc& a, std::uint64_t seed = kDefaultSeed);

/// Places where a has nonzero valuation, in Place order.
std::vector<Place> support(const RatFunc& a, std::uint64_t seed = kDefaultSeed);

/// Infinity, then every finite place of degree <= d in Place order.
std::vector<Place> places_up_to(const GaloisField& field, int d);

/// Number of monic irreducibles of degree e over F_Q: (1/e) sum_{j|e} mu(j) Q^(e/j).
std::uint64_t necklace_count(std::uint64_t Q, int e);

}  // namespace ffdyn
