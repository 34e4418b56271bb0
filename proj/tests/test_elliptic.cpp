#include "ffdyn/elliptic.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace ffdyn;
using ffdyn::testing::random_poly;

namespace {

const GaloisField& F5() { return GaloisField::get(5, 1); }
EllipticCurve curve(const char* s, const GaloisField& F = F5()) { return parse_curve(F, s); }
EPoint point(const char* s, const GaloisField& F = F5()) { return parse_epoint(F, s); }

constexpr const char* kNonTorsion = "[t^2+3, 1]";
constexpr const char* kOneI2 = "[0, 1, 0, 0, t^6+4*t^5+4*t^4+4*t^3+4*t^2]";
constexpr const char* kLegendre = "[0, -t-1, 0, t, 0]";

// A random curve through a random point (x0, y0): pick a1..a4, solve for a6.
std::pair<EllipticCurve, EPoint> random_curve_with_point(const GaloisField& F, std::mt19937_64& rng) {
  for (;;) {
    std::array<RatFunc, 5> a;
    for (int i = 0; i < 4; ++i) a[i] = RatFunc(random_poly(F, rng, 1));
    RatFunc x(random_poly(F, rng, 1)), y(random_poly(F, rng, 2));
    a[4] = y * y + a[0] * x * y + a[2] * y - x * x * x - a[1] * x * x - a[3] * x;
    try {
      EllipticCurve E(F, a);
      return {E, EPoint::affine(x, y)};
    } catch (const DomainError&) {
    }
  }
}

bool within(const Rational& a, const Rational& b, const Rational& tol) { return abs(a - b) <= tol; }

}  // namespace

TEST_CASE("curve invariants and validation") {
  auto E = curve("[0, t^2]");
  CHECK(E.isotrivial());
  CHECK(!E.constant_coefficients());
  CHECK(curve("[1, 0]").isotrivial());
  CHECK(curve("[1, 0]").constant_coefficients());
  CHECK(!curve(kNonTorsion).isotrivial());
  CHECK(E.duplication_map().degree() == 4);
  CHECK_THROWS_AS(curve("[0, 0]"), DomainError);
  CHECK_THROWS_AS(curve("[t, 1]", GaloisField::get(3, 1)), ValidationError);
  CHECK_THROWS_AS(curve("[1, 2, 3]"), ValidationError);
  CHECK_THROWS_AS(nt_height(E, point("(1, 1)")), DomainError);
  // j of the Legendre curve: 256 (t^2-t+1)^3 / (t^2 (t-1)^2).
  auto L = curve(kLegendre);
  CHECK(L.j_invariant() == parse_ratfunc(F5(), "256*(t^2-t+1)^3/(t^2*(t-1)^2)"));
}

TEST_CASE("group law examples") {
  auto E = curve("[0, t^2]");
  EPoint P = point("(0, t)");
  CHECK(dbl(E, P) == point("(0, -t)"));
  CHECK(add(E, P, point("(0, -t)")).infinity);
  CHECK(mul(E, 3, P).infinity);
  CHECK(mul(E, -1, P) == neg(E, P));
  CHECK(mul(E, 0, P).infinity);
}

TEST_CASE("group law axioms in every characteristic") {
  std::mt19937_64 rng(83);
  for (auto q : {2u, 3u, 4u, 5u, 7u, 9u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 12; ++trial) {
      auto [E, P] = random_curve_with_point(F, rng);
      REQUIRE(on_curve(E, P));
      EPoint P2 = dbl(E, P), P3 = add(E, P2, P);
      CHECK(on_curve(E, P2));
      CHECK(on_curve(E, P3));
      CHECK(add(E, P, P2) == add(E, P2, P));
      CHECK(add(E, add(E, P, P2), P3) == add(E, P, add(E, P2, P3)));
      CHECK(add(E, P, neg(E, P)).infinity);
      CHECK(add(E, P, EPoint::zero()) == P);
      CHECK(mul(E, 5, P) == add(E, P2, P3));
      CHECK(mul(E, 6, P) == dbl(E, P3));
      CHECK(sub(E, P3, P) == P2);
      // Duplication map matches the group law on x.
      CHECK(evaluate(E.duplication_map(), x_point(E, P)) == x_point(E, P2));
    }
  }
}

TEST_CASE("duplication gap constant bounds sampled gaps") {
  std::mt19937_64 rng(89);
  for (auto q : {3u, 4u, 5u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 10; ++trial) {
      auto [E, P] = random_curve_with_point(F, rng);
      EPoint Q = P;
      for (int k = 0; k < 3 && !Q.infinity; ++k) {
        EPoint Q2 = dbl(E, Q);
        long long gap = x_point(E, Q2).height() - 4 * x_point(E, Q).height();
        CHECK(Rational(std::abs(gap)) <= E.gap_constant());
        Q = add(E, Q2, P);
      }
    }
  }
}

TEST_CASE("Neron-Tate height examples") {
  auto h0 = nt_height(curve(kLegendre), EPoint::zero());
  CHECK(h0.exact);
  CHECK(h0.value == 0);
  auto h1 = nt_height(curve(kLegendre), point("(0, 0)"));
  CHECK(h1.value <= Rational(1, 1000));
  CHECK(h1.exact);
  // Searched point on the curated non-isotrivial curve.
  auto E = curve(kNonTorsion);
  auto found = search_points(E, 1, 1);
  REQUIRE(!found.empty());
  CHECK(std::find(found.begin(), found.end(), point("(0, 1)")) != found.end());
  auto h2 = nt_height(E, point("(0, 1)"));
  CHECK(h2.value > h2.error_bound);
  CHECK(h2.error_bound <= Rational(1, 1000));
  // Oracle: group-law doubling, 4 steps, with its own bound C_E/(3*4^4).
  const Rational oracle_bound = E.gap_constant() / (3 * 256);
  CHECK(within(h2.value, oracle::doubling_height_ratio(E, point("(0, 1)"), 4), h2.error_bound + oracle_bound));
  CHECK(within(h2.value, 1, h2.error_bound));
  auto B = curve(kOneI2);
  auto h3 = nt_height(B, point("(t, t^3+2*t^2)"));
  CHECK(within(h3.value, oracle::doubling_height_ratio(B, point("(t, t^3+2*t^2)"), 4),
               h3.error_bound + B.gap_constant() / (3 * 256)));
  CHECK(within(h3.value, Rational(3, 2), h3.error_bound));
}

TEST_CASE("Neron-Tate laws on curated curves") {
  const Rational eps(1, 1000);
  auto E = curve(kNonTorsion);
  std::vector<EPoint> pts = search_points(E, 1, 1);
  REQUIRE(pts.size() >= 2);
  pts.resize(std::min<std::size_t>(pts.size(), 3));
  for (const auto& P : pts) {
    CHECK(within(nt_height(E, dbl(E, P)).value, 4 * nt_height(E, P).value, 5 * eps));
    for (const auto& Q : pts) {
      auto lhs = nt_height(E, add(E, P, Q)).value + nt_height(E, sub(E, P, Q)).value;
      auto rhs = 2 * nt_height(E, P).value + 2 * nt_height(E, Q).value;
      CHECK(within(lhs, rhs, 6 * eps));
    }
    auto po = nt_pairing(E, P, EPoint::zero());
    CHECK(abs(po.value) <= po.error_bound);
    auto pp = nt_pairing(E, P, P);
    auto hp = nt_height(E, P);
    CHECK(within(pp.value, hp.value, pp.error_bound + hp.error_bound));
    auto pn = nt_pairing(E, P, neg(E, P));
    CHECK(within(pn.value, -hp.value, pn.error_bound + hp.error_bound));
    CHECK(pp.error_bound <= Rational(3, 2) * eps);
  }
  CHECK(nt_pairing(E, pts[0], pts[1]).value == nt_pairing(E, pts[1], pts[0]).value);
  auto T = curve("[0, t^2]");
  CHECK(is_torsion(T, point("(0, t)")));
  CHECK(nt_height(T, point("(0, t)")).value <= eps);
}

TEST_CASE("torsion decision examples") {
  CHECK(is_torsion(curve("[0, t^2]"), point("(0, t)")));
  CHECK(is_torsion(curve(kLegendre), point("(0, 0)")));
  CHECK(is_torsion(curve(kLegendre), point("(1, 0)")));
  CHECK(is_torsion(curve(kLegendre), point("(t, 0)")));
  CHECK(!is_torsion(curve(kNonTorsion), point("(0, 1)")));
  CHECK(!is_torsion(curve(kOneI2), point("(t, t^3+2*t^2)")));
}

TEST_CASE("torsion iff height zero on searched points") {
  const Rational eps(1, 1000);
  for (const char* s : {kLegendre, kNonTorsion}) {
    auto E = curve(s);
    auto pts = search_points(E, 1, 1);
    CHECK(!pts.empty());
    for (const auto& P : pts) {
      auto h = nt_height(E, P);
      CAPTURE(format_epoint(P));
      CHECK(is_torsion(E, P) == (h.value <= eps));
    }
  }
}

TEST_CASE("Gram matrices") {
  const Rational eps(1, 1000);
  auto G0 = gram_matrix_serial(curve(kLegendre), {EPoint::zero()});
  REQUIRE(G0.size() == 1);
  CHECK(G0[0][0].value == 0);
  auto C = curve("[1, 0]");
  auto Gc = gram_matrix_parallel(C, {point("(0, 0)"), EPoint::zero()});
  CHECK(Gc[0][0].value == 0);
  CHECK(Gc[0][1].value == 0);
  auto E = curve(kNonTorsion);
  EPoint P = point("(0, 1)");
  auto G = gram_matrix_parallel(E, {P, dbl(E, P)});
  auto S = gram_matrix_serial(E, {P, dbl(E, P)});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(G[i][j].value == S[i][j].value);
      CHECK(G[i][j].value == G[j][i].value);
    }
  // det within interval propagation of the entry bounds.
  auto bound = [](const HeightEstimate& a, const HeightEstimate& b) {
    return abs(a.value) * b.error_bound + abs(b.value) * a.error_bound + a.error_bound * b.error_bound;
  };
  Rational det = G[0][0].value * G[1][1].value - G[0][1].value * G[1][0].value;
  CHECK(abs(det) <= bound(G[0][0], G[1][1]) + bound(G[0][1], G[1][0]));
  for (int i = 0; i < 2; ++i) CHECK(G[i][i].value >= -eps);
}

TEST_CASE("trace kernel on the constant curve") {
  auto C = curve("[1, 0]");
  auto pts = constant_points(C, 1);
  CHECK(pts.size() == 4);  // #E(F_5) for y^2 = x^3 + x
  for (const auto& P : pts) CHECK(is_torsion(C, P));
  auto rep = trace_kernel_check(C, pts);
  CHECK(rep.pass);
  CHECK(rep.constant_indices.size() == pts.size());
  auto C25 = constant_points(C, 2);
  for (const auto& P : C25) CHECK(is_torsion(C, P));
  CHECK_THROWS_AS(trace_kernel_check(curve("[0, t^2]"), {}), UnsupportedError);
  CHECK_THROWS_AS(trace_kernel_check(curve(kNonTorsion), {}), UnsupportedError);
}

TEST_CASE("polynomial square roots") {
  std::mt19937_64 rng(97);
  for (auto q : {2u, 3u, 5u, 9u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 50; ++trial) {
      Poly s = random_poly(F, rng, 6);
      auto r = poly_sqrt(s * s);
      REQUIRE(r.has_value());
      CHECK(*r * *r == s * s);
    }
  }
  CHECK(!poly_sqrt(parse_poly(F5(), "t^2+2")).has_value());
  CHECK(!poly_sqrt(parse_poly(F5(), "t^3")).has_value());
}

TEST_CASE("point text round trip") {
  auto E = curve(kNonTorsion);
  for (const auto& P : search_points(E, 1, 1)) CHECK(parse_epoint(F5(), format_epoint(P)) == P);
  CHECK(parse_epoint(F5(), "O").infinity);
  CHECK_THROWS_AS(parse_epoint(F5(), "(1)"), ValidationError);
}
