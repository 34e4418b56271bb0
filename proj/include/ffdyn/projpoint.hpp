#pragma once

#include "ffdyn/place.hpp"
#include "ffdyn/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ffdyn {

/// Point [a : b] of P^1 over a constant extension K_m = F_{Q}(t).
///
/// Coordinates are coprime polynomials in t, normalized so that b is monic,
/// or b = 0 and a = 1. The representative is unique, so equality of points is
/// equality of coordinates. `extension()` records m relative to the base
/// field the caller is working over; it does not affect arithmetic.
class ProjPoint {
 public:
  ProjPoint() = default;

  /// Any nonzero pair of rational functions; denominators are cleared.
  static ProjPoint from_coords(const RatFunc& a, const RatFunc& b, unsigned extension = 1);
  static ProjPoint from_polys(Poly a, Poly b, unsigned extension = 1);
  /// Precondition: gcd(a, b) = 1. Only the scalar normalization is applied.
  static ProjPoint from_coprime(Poly a, Poly b, unsigned extension = 1);
  static ProjPoint infinity(const GaloisField& field, unsigned extension = 1);
  /// [a : 1]
  static ProjPoint affine(const Poly& a, unsigned extension = 1);

  const Poly& a() const { return a_; }
  const Poly& b() const { return b_; }
  const GaloisField& field() const { return b_.is_zero() ? a_.field() : b_.field(); }
  unsigned extension() const { return extension_; }
  bool is_infinity() const { return b_.is_zero(); }
  /// Both coordinates constant.
  bool is_constant() const { return a_.is_constant() && b_.is_constant(); }

  /// Naive height max(deg a, deg b). Invariant under constant field extension.
  long long height() const { return std::max(a_.degree(), b_.degree()); }

  /// Finite points by (b, a); infinity last.
  friend std::strong_ordering operator<=>(const ProjPoint& x, const ProjPoint& y);
  friend bool operator==(const ProjPoint& x, const ProjPoint& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  std::size_t hash() const { return a_.hash() * 0x9e3779b97f4a7c15ull ^ b_.hash(); }

 private:
  ProjPoint(Poly a, Poly b, unsigned ext) : a_(std::move(a)), b_(std::move(b)), extension_(ext) {}

  Poly a_;
  Poly b_;
  unsigned extension_ = 1;
};

struct ProjPointHash {
  std::size_t operator()(const ProjPoint& x) const { return x.hash(); }
};

struct LocalTerm {
  Place place;
  Rational value;
};

/// Local decomposition: total = sum deg(v) * value_v over the listed places.
struct LocalHeightProfile {
  std::vector<LocalTerm> terms;  // Place order, nonzero values only
  Rational total;
};

/// lambda_v = -min(ord_v a, ord_v b) for an arbitrary representative (a, b).
LocalHeightProfile local_heights(const RatFunc& a, const RatFunc& b, std::uint64_t seed = kDefaultSeed);
LocalHeightProfile local_heights(const ProjPoint& x, std::uint64_t seed = kDefaultSeed);

/// Number of points of P^1(F_Q(t)) of height <= H: Q^(2H+1) + 1.
Integer point_count(std::uint64_t Q, long long H);

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 22;

/// Field of definition for points over the degree-m constant extension of `base`.
const GaloisField& extension_field(const GaloisField& base, unsigned m);

/// All polynomials of degree <= H over F in Poly order (zero first); monic only if requested.
std::vector<Poly> polys_up_to(const GaloisField& F, long long H, bool monic_only);

/// Points with denominator exactly `b` (monic) and height <= H, ascending.
std::vector<ProjPoint> enumerate_block(const Poly& b, long long H, unsigned extension);

/// Every point of P^1(K_m) of height <= H in ascending order. Throws
/// ResourceError, quoting the count formula, when the count exceeds `cap`.
std::vector<ProjPoint> enumerate_points(const GaloisField& base, unsigned m, long long H,
                                        std::uint64_t cap = kDefaultEnumerationCap);
/// `count` points of height <= H over the degree-m extension, drawn from
/// uniformly random coordinate pairs (a, b) of degree <= H; reproducible from
/// the seed. Duplicates are possible.
std::vector<ProjPoint> random_points(const GaloisField& base, unsigned m, long long H, std::size_t count,
                                     std::uint64_t seed);
void check_enumeration_cap(std::uint64_t Q, long long H, std::uint64_t cap);

std::string format_point(const ProjPoint& x);
/// "[a : b]" where a, b use the rational-function syntax over `field`.
ProjPoint parse_point(const GaloisField& field, std::string_view text, unsigned extension = 1);

}  // namespace ffdyn
