#pragma once

#include "ffdyn/kpoly.hpp"
#include "ffdyn/projpoint.hpp"
#include "ffdyn/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ffdyn {

/// Endomorphism z -> F(z)/G(z) of P^1 over K = F_Q(t), stored by the
/// z-coefficients of F and G as polynomials in t (constant term first, both
/// padded to length d + 1). The coefficient tuple has trivial content and the
/// top nonzero coefficient of G is monic.
class RationalMap {
 public:
  RationalMap() = default;
  /// Clears denominators and content. Throws DomainError when the result is not
  /// a morphism of degree >= 2.
  static RationalMap from_kfrac(const KFrac& f);
  static RationalMap from_polys(std::vector<Poly> num, std::vector<Poly> den);
  static RationalMap parse(const GaloisField& field, std::string_view text);

  const GaloisField& field() const { return *field_; }
  int degree() const { return degree_; }
  const std::vector<Poly>& num() const { return num_; }
  const std::vector<Poly>& den() const { return den_; }
  /// Res(F*, G*) of the degree-d homogenizations.
  const Poly& resultant() const { return resultant_; }
  /// H_f: largest t-degree among the coefficients.
  long long coefficient_height() const { return coefficient_height_; }
  /// Every coefficient lies in the constant field.
  bool has_constant_coefficients() const { return coefficient_height_ == 0; }

  /// Base change to a field containing the field of definition.
  RationalMap over(const GaloisField& ext) const;
  /// this o g.
  RationalMap compose(const RationalMap& g) const;

  std::string num_string() const;
  std::string den_string() const;
  /// "F" when G = 1, otherwise "(F)/(G)".
  std::string to_string() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void finish();

  const GaloisField* field_ = nullptr;
  int degree_ = 0;
  std::vector<Poly> num_;
  std::vector<Poly> den_;
  Poly resultant_;
  long long coefficient_height_ = 0;
};

/// Homogeneous resultant of two forms of degree d given by coefficient
/// vectors of length d + 1 (Sylvester determinant, fraction-free).
Poly homogeneous_resultant(const std::vector<Poly>& F, const std::vector<Poly>& G);

/// x over a constant extension of the field of f.
ProjPoint evaluate(const RationalMap& f, const ProjPoint& x);
/// n-th iterate applied to x.
ProjPoint iterate(const RationalMap& f, const ProjPoint& x, std::uint64_t n);

/// C(f) with |h(f(x)) - d h(x)| <= C(f) for every x over every constant extension.
Rational gap_constant(const RationalMap& f);
/// B(f) = ceil(C(f)/(d - 1)): preperiodic points have height <= B(f).
long long preperiodic_height_bound(const RationalMap& f);

struct HeightEstimate {
  Rational value;
  Rational error_bound;
  bool exact = false;
  std::uint64_t iterations = 0;
};

inline constexpr std::uint64_t kDefaultIterationCap = 60;

struct CanonicalHeightOptions {
  Rational eps = Rational(1, 1000);
  /// Canonical height for O(polarization): naive heights taken through the
  /// degree-polarization Veronese embedding.
  unsigned polarization = 1;
  std::uint64_t iteration_cap = kDefaultIterationCap;
};

/// h_f(x) = lim h(f^N x)/d^N, stopping at the least N with C/(d^N (d-1)) <= eps.
/// Throws ResourceError when N exceeds the iteration cap.
HeightEstimate canonical_height(const RationalMap& f, const ProjPoint& x, const CanonicalHeightOptions& opt = {});

/// Exact: orbit height cutoff B(f) plus cycle detection.
bool is_preperiodic(const RationalMap& f, const ProjPoint& x);

/// Naive height of x under the O(d) polarization (Veronese coordinates).
long long polarized_height(const ProjPoint& x, unsigned d);

std::string format_height_estimate(const HeightEstimate& h);

}  // namespace ffdyn
