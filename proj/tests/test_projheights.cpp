#include "ffdyn/errors.hpp"
#include "ffdyn/projpoint.hpp"
#include "ffdyn/text.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace ffdyn;
using ffdyn::testing::random_nonzero_poly;
using ffdyn::testing::random_nonzero_ratfunc;
using ffdyn::testing::random_poly;

namespace {

ProjPoint pt(const GaloisField& F, const char* s) { return parse_point(F, s); }

// All coprime pairs (a, b) of degree <= H, each normalized independently,
// collected as a set: a double-loop oracle for enumerate_points.
std::set<std::pair<std::vector<GaloisField::Elem>, std::vector<GaloisField::Elem>>> oracle_points(
    const GaloisField& F, long long H) {
  std::set<std::pair<std::vector<GaloisField::Elem>, std::vector<GaloisField::Elem>>> out;
  auto all = polys_up_to(F, H, false);
  for (const auto& a : all)
    for (const auto& b : all) {
      if (a.is_zero() && b.is_zero()) continue;
      if (gcd(a, b).degree() > 0) continue;
      Poly na = a, nb = b;
      if (!b.is_zero()) {
        auto inv = F.inv(b.lead());
        na = a.scaled(inv);
        nb = b.scaled(inv);
      } else {
        na = a.monic();
      }
      out.insert({na.coeffs(), nb.coeffs()});
    }
  return out;
}

}  // namespace

TEST_CASE("height examples") {
  const auto& F3 = GaloisField::get(3, 1);
  CHECK(pt(F3, "[t^2+1 : t]").height() == 2);
  CHECK(pt(F3, "[1 : 1]").height() == 0);
  auto x = ProjPoint::from_coords(parse_ratfunc(F3, "t/(t+1)"), RatFunc::constant(F3, 1));
  CHECK(format_point(x) == "[t : t+1]");
  CHECK(x.height() == 1);
  CHECK(pt(F3, "[0 : 1]").height() == 0);
  CHECK(pt(F3, "[1 : 0]").height() == 0);
  CHECK(format_point(pt(F3, "[2*t : 0]")) == "[1 : 0]");
  CHECK_THROWS_AS(pt(F3, "[0 : 0]"), DomainError);
  CHECK_THROWS_AS(pt(F3, "[t : 1"), ValidationError);
}

TEST_CASE("height is invariant under scaling by K_m") {
  std::mt19937_64 rng(41);
  for (auto q : {2u, 4u, 5u, 8u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 200; ++trial) {
      RatFunc a = random_nonzero_ratfunc(F, rng, 4), b = random_nonzero_ratfunc(F, rng, 4);
      RatFunc s = random_nonzero_ratfunc(F, rng, 4);
      auto x = ProjPoint::from_coords(a, b), y = ProjPoint::from_coords(a * s, b * s);
      CHECK(x == y);
      CHECK(x.height() == y.height());
      CHECK(gcd(x.a(), x.b()).is_one());
    }
  }
}

TEST_CASE("height is invariant under constant extension") {
  std::mt19937_64 rng(43);
  const auto& F2 = GaloisField::get(2, 1);
  const auto& F8 = GaloisField::get(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = ProjPoint::from_polys(random_nonzero_poly(F2, rng, 6), random_poly(F2, rng, 6));
    auto y = ProjPoint::from_polys(embed(x.a(), F8), embed(x.b(), F8), 3);
    CHECK(x.height() == y.height());
  }
}

TEST_CASE("local height examples") {
  const auto& F3 = GaloisField::get(3, 1);
  auto prof = local_heights(pt(F3, "[t : 1]"));
  REQUIRE(prof.terms.size() == 1);
  CHECK(prof.terms[0].place.is_infinite());
  CHECK(prof.terms[0].value == 1);
  CHECK(prof.total == 1);
  auto prof2 = local_heights(pt(F3, "[t^2+1 : t]"));
  REQUIRE(prof2.terms.size() == 1);
  CHECK(prof2.terms[0].value == 2);
  CHECK(prof2.total == 2);
  auto prof3 = local_heights(pt(F3, "[1 : 1]"));
  CHECK(prof3.terms.empty());
  CHECK(prof3.total == 0);
  // A non-normalized representative spreads the height over finite places.
  auto prof4 = local_heights(parse_ratfunc(F3, "t^2"), parse_ratfunc(F3, "t*(t+1)"));
  CHECK(prof4.total == 1);
  CHECK(prof4.terms.size() == 2);
}

TEST_CASE("local heights sum to the height on random points across m <= 3") {
  std::mt19937_64 rng(47);
  int checked = 0;
  for (auto base : {2u, 3u, 5u}) {
    for (unsigned m = 1; m <= 3; ++m) {
      const auto& F = extension_field(GaloisField::get(base, 1), m);
      for (int trial = 0; trial < 56; ++trial) {
        RatFunc a = random_nonzero_ratfunc(F, rng, 4), b = random_nonzero_ratfunc(F, rng, 4);
        if (trial % 7 == 0) b = RatFunc(F);
        auto x = ProjPoint::from_coords(a, b, m);
        CHECK(local_heights(x).total == x.height());
        CHECK(local_heights(a, b).total == x.height());
        ++checked;
      }
    }
  }
  CHECK(checked >= 500);
}

TEST_CASE("enumeration examples and counts") {
  const auto& F2 = GaloisField::get(2, 1);
  auto e0 = enumerate_points(F2, 1, 0);
  REQUIRE(e0.size() == 3);
  CHECK(format_point(e0[0]) == "[0 : 1]");
  CHECK(format_point(e0[1]) == "[1 : 1]");
  CHECK(format_point(e0[2]) == "[1 : 0]");
  CHECK(enumerate_points(F2, 2, 0).size() == 5);
  CHECK(point_count(2, 1) == 9);
  CHECK(point_count(4, 2) == 1025);
  CHECK_THROWS_AS(enumerate_points(F2, 1, 30), ResourceError);
  try {
    enumerate_points(F2, 1, 5, 10);
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("Q^(2H+1)+1") != std::string::npos);
  }
}

TEST_CASE("enumeration matches the double-loop oracle") {
  for (unsigned m : {1u, 2u}) {
    const auto& F = extension_field(GaloisField::get(2, 1), m);
    for (long long H = 0; H <= (m == 1 ? 2 : 1); ++H) {
      auto pts = enumerate_points(GaloisField::get(2, 1), m, H);
      auto oracle = oracle_points(F, H);
      CHECK(pts.size() == oracle.size());
      CHECK(Integer(pts.size()) == point_count(F.order(), H));
      std::set<std::pair<std::vector<GaloisField::Elem>, std::vector<GaloisField::Elem>>> got;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].height() <= H);
        CHECK(pts[i].extension() == m);
        if (i > 0) CHECK(pts[i - 1] < pts[i]);
        got.insert({pts[i].a().coeffs(), pts[i].b().coeffs()});
      }
      CHECK(got == oracle);
    }
  }
  auto pts3 = enumerate_points(GaloisField::get(3, 1), 1, 1);
  CHECK(pts3.size() == oracle_points(GaloisField::get(3, 1), 1).size());
}

TEST_CASE("point text round trip") {
  std::mt19937_64 rng(53);
  const auto& F = GaloisField::get(2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = ProjPoint::from_polys(random_poly(F, rng, 5), random_nonzero_poly(F, rng, 5));
    CHECK(parse_point(F, format_point(x)) == x);
  }
}
