#pragma once

#include "ffdyn/dynamics.hpp"
#include "ffdyn/ratfunc.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ffdyn {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_Q(t), Delta != 0.
class EllipticCurve {
 public:
  EllipticCurve() = default;
  /// Coefficients in the order a1, a2, a3, a4, a6.
  EllipticCurve(const GaloisField& field, std::array<RatFunc, 5> a);
  /// y^2 = x^3 + a4 x + a6; requires characteristic not 2 or 3.
  static EllipticCurve short_form(const RatFunc& a4, const RatFunc& a6);

  const GaloisField& field() const { return *field_; }
  const RatFunc& a1() const { return a_[0]; }
  const RatFunc& a2() const { return a_[1]; }
  const RatFunc& a3() const { return a_[2]; }
  const RatFunc& a4() const { return a_[3]; }
  const RatFunc& a6() const { return a_[4]; }
  const std::array<RatFunc, 5>& coefficients() const { return a_; }
  const RatFunc& b2() const { return b2_; }
  const RatFunc& b4() const { return b4_; }
  const RatFunc& b6() const { return b6_; }
  const RatFunc& b8() const { return b8_; }
  const RatFunc& discriminant() const { return disc_; }
  const RatFunc& j_invariant() const { return j_; }
  /// j constant.
  bool isotrivial() const { return j_.is_constant(); }
  bool constant_coefficients() const;

  /// x(P) -> x(2P) as a degree-4 self-map of the x-line.
  const RationalMap& duplication_map() const { return dup_; }
  /// C_E: |h(x(2P)) - 4 h(x(P))| <= C_E.
  Rational gap_constant() const { return ffdyn::gap_constant(dup_); }

  EllipticCurve over(const GaloisField& ext) const;
  std::string to_string() const;

 private:
  const GaloisField* field_ = nullptr;
  std::array<RatFunc, 5> a_;
  RatFunc b2_, b4_, b6_, b8_, disc_, j_;
  RationalMap dup_;
};

/// O or an affine point (x, y) with coordinates in F_{Q'}(t) for a constant
/// extension F_{Q'} of the curve's field.
struct EPoint {
  bool infinity = true;
  RatFunc x, y;
  unsigned extension = 1;

  static EPoint zero(unsigned ext = 1) { return EPoint{true, {}, {}, ext}; }
  static EPoint affine(RatFunc x, RatFunc y, unsigned ext = 1) { return EPoint{false, std::move(x), std::move(y), ext}; }
  friend bool operator==(const EPoint& a, const EPoint& b) {
    return a.infinity == b.infinity && (a.infinity || (a.x == b.x && a.y == b.y));
  }
};

bool on_curve(const EllipticCurve& E, const EPoint& P);
/// Throws DomainError when P is not on E.
void require_on_curve(const EllipticCurve& E, const EPoint& P);
EPoint neg(const EllipticCurve& E, const EPoint& P);
EPoint add(const EllipticCurve& E, const EPoint& P, const EPoint& Q);
EPoint sub(const EllipticCurve& E, const EPoint& P, const EPoint& Q);
EPoint dbl(const EllipticCurve& E, const EPoint& P);
EPoint mul(const EllipticCurve& E, long long n, const EPoint& P);

/// The x-coordinate as a point of P^1 (O maps to infinity).
ProjPoint x_point(const EllipticCurve& E, const EPoint& P);

/// h_x(P) = lim 4^-n h(x(2^n P)), certified to within opt.eps.
HeightEstimate nt_height(const EllipticCurve& E, const EPoint& P, const CanonicalHeightOptions& opt = {});
/// <P,Q> = (h_x(P+Q) - h_x(P) - h_x(Q))/2 with the propagated bound.
HeightEstimate nt_pairing(const EllipticCurve& E, const EPoint& P, const EPoint& Q,
                          const CanonicalHeightOptions& opt = {});
/// Exact: preperiodicity of x(P) under the duplication map.
bool is_torsion(const EllipticCurve& E, const EPoint& P);

using HeightMatrix = std::vector<std::vector<HeightEstimate>>;
HeightMatrix gram_matrix_serial(const EllipticCurve& E, const std::vector<EPoint>& points,
                                const CanonicalHeightOptions& opt = {});
HeightMatrix gram_matrix_parallel(const EllipticCurve& E, const std::vector<EPoint>& points,
                                  const CanonicalHeightOptions& opt = {}, int threads = 0);

/// Affine points with polynomial x of degree <= max_degree over the degree-m
/// extension, ordered by (x, y). Odd characteristic only.
std::vector<EPoint> search_points(const EllipticCurve& E, unsigned m, int max_degree);
/// All points of E with constant coordinates over the degree-m extension,
/// O first. Requires constant coefficients.
std::vector<EPoint> constant_points(const EllipticCurve& E, unsigned m);

struct TraceKernelReport {
  bool pass = true;
  std::vector<std::size_t> constant_indices;  // points with both coordinates constant
  std::vector<bool> torsion;                  // is_torsion for those points
  HeightMatrix gram;
  std::string message;
};
/// For an isotrivial curve with literally constant coefficients: constant
/// points are torsion and their Gram rows vanish within eps. Throws
/// UnsupportedError when the coefficients are not constant.
TraceKernelReport trace_kernel_check(const EllipticCurve& E, const std::vector<EPoint>& points,
                                     const CanonicalHeightOptions& opt = {}, int threads = 0);

/// Square root in F_Q[t], if f is a square.
std::optional<Poly> poly_sqrt(const Poly& f);

std::string format_epoint(const EPoint& P);
/// "O" or "(x, y)" in the rational-function syntax.
EPoint parse_epoint(const GaloisField& field, std::string_view text, unsigned extension = 1);
/// "[a1, a2, a3, a4, a6]" or "[a4, a6]" (short form).
EllipticCurve parse_curve(const GaloisField& field, std::string_view text);

}  // namespace ffdyn
