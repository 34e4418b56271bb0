#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ffdyn {

/// Finite field F_{p^m} with elements encoded as integers 0..q-1.
///
/// An element c_0 + c_1 g + ... + c_{m-1} g^{m-1} is stored as
/// c_0 + c_1 p + ... + c_{m-1} p^{m-1}, where g is the class of x modulo the
/// defining polynomial. The defining polynomial is the least monic irreducible
/// of degree m when its lower coefficients (c_{m-1}, ..., c_0) are read as a
/// base-p numeral, so two runs with the same (p, m) always agree on encodings.
///
/// Instances are interned: `GaloisField::get` returns a reference that stays
/// valid for the life of the process, and equal fields compare by address.
class GaloisField {
 public:
  using Elem = std::uint32_t;

  /// Largest supported field order q = p^m (tables are indexed by element).
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 20;

  static const GaloisField& get(std::uint32_t p, std::uint32_t m);
  /// Field with q elements; q must be a prime power.
  static const GaloisField& with_order(std::uint64_t q);

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return m_; }
  std::uint32_t order() const { return q_; }
  /// Coefficients over F_p, constant term first, monic of length m + 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  std::string name() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// The class of x; only meaningful when m > 1.
  Elem generator() const;
  Elem from_int(long long v) const;

  Elem add(Elem a, Elem b) const {
    if (m_ == 1) {
      std::uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    return add_digits(a, b);
  }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// Inverse of the Frobenius a -> a^p.
  Elem pth_root(Elem a) const;
  bool is_square(Elem a) const;
  /// The least (in encoding order) square root, if one exists.
  std::optional<Elem> sqrt(Elem a) const;

  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;

  /// True when `sub` is (canonically embedded as) a subfield of this field.
  bool contains(const GaloisField& sub) const;
  /// Canonical embedding of an element of `sub` into this field: the
  /// generator of `sub` maps to the least root of its defining polynomial.
  Elem embed(const GaloisField& sub, Elem a) const;

 private:
  GaloisField(std::uint32_t p, std::uint32_t m);
  Elem add_digits(Elem a, Elem b) const;
  Elem slow_mul(Elem a, Elem b) const;
  void build_tables();
  void build_embeddings();

  std::uint32_t p_;
  std::uint32_t m_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // embeddings_[d] = image table of F_{p^d} for each d | m, d < m.
  std::vector<std::vector<Elem>> embeddings_;

  friend struct FieldRegistry;
};

bool is_prime(std::uint64_t n);

}  // namespace ffdyn
