#include "ffdyn/errors.hpp"
#include "ffdyn/factor.hpp"
#include "ffdyn/place.hpp"
#include "ffdyn/text.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <map>

using namespace ffdyn;
using ffdyn::testing::random_nonzero_poly;
using ffdyn::testing::random_nonzero_ratfunc;
using ffdyn::testing::random_poly;

namespace {

const std::vector<std::uint64_t> kSmallOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

// Schoolbook product of digit vectors modulo the field's defining polynomial.
GaloisField::Elem oracle_mul(const GaloisField& F, GaloisField::Elem a, GaloisField::Elem b) {
  const std::uint32_t p = F.characteristic(), m = F.degree();
  auto da = F.digits(a), db = F.digits(b);
  std::vector<std::uint64_t> prod(2 * m, 0);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p;
  const auto& mod = F.modulus();
  for (std::size_t k = 2 * m - 1; k >= m; --k) {
    std::uint64_t c = prod[k];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i <= m; ++i) prod[k - m + i] = (prod[k - m + i] + (p - c) * mod[i]) % p;
  }
  std::vector<std::uint32_t> d(prod.begin(), prod.begin() + m);
  return F.from_digits(d);
}

// Brute-force irreducibility: no monic factor of degree <= deg/2.
bool oracle_irreducible(const Poly& f) {
  const GaloisField& F = f.field();
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::vector<GaloisField::Elem> c(d + 1, 0);
    c[d] = 1;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= F.order();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t r = idx;
      for (int i = 0; i < d; ++i) {
        c[i] = static_cast<GaloisField::Elem>(r % F.order());
        r /= F.order();
      }
      if ((f % Poly(F, c)).is_zero()) return false;
    }
  }
  return true;
}

// Trial division by monic polynomials in increasing order.
std::map<std::vector<GaloisField::Elem>, int> oracle_factor(Poly f) {
  const GaloisField& F = f.field();
  std::map<std::vector<GaloisField::Elem>, int> out;
  f = f.monic();
  for (int d = 1; f.degree() > 0; ++d) {
    std::vector<GaloisField::Elem> c(d + 1, 0);
    c[d] = 1;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= F.order();
    for (std::uint64_t idx = 0; idx < total && f.degree() > 0; ++idx) {
      std::uint64_t r = idx;
      for (int i = 0; i < d; ++i) {
        c[i] = static_cast<GaloisField::Elem>(r % F.order());
        r /= F.order();
      }
      Poly g(F, c);
      while (f.degree() >= d && (f % g).is_zero()) {
        out[g.coeffs()]++;
        f = exact_div(f, g);
      }
    }
  }
  return out;
}

Poly P(const GaloisField& F, const char* s) { return parse_poly(F, s); }

}  // namespace

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (auto q : kSmallOrders) {
    const auto& F = GaloisField::with_order(q);
    CAPTURE(q);
    for (GaloisField::Elem a = 0; a < q; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (GaloisField::Elem b = 0; b < q; ++b) {
        REQUIRE(F.mul(a, b) == oracle_mul(F, a, b));
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (GaloisField::Elem c = 0; c < q; ++c) {
          CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("defining polynomial is the least monic irreducible") {
  using V = std::vector<std::uint32_t>;
  CHECK(GaloisField::get(2, 2).modulus() == V{1, 1, 1});
  CHECK(GaloisField::get(2, 3).modulus() == V{1, 1, 0, 1});
  CHECK(GaloisField::get(2, 4).modulus() == V{1, 1, 0, 0, 1});
  CHECK(GaloisField::get(3, 2).modulus() == V{1, 0, 1});
  CHECK(GaloisField::get(5, 2).modulus() == V{2, 0, 1});
  CHECK_THROWS_AS(GaloisField::with_order(6), ValidationError);
  CHECK_THROWS_AS(GaloisField::get(2, 21), ResourceError);
}

TEST_CASE("pth roots, square roots, and subfield embeddings") {
  for (auto q : kSmallOrders) {
    const auto& F = GaloisField::with_order(q);
    for (GaloisField::Elem a = 0; a < q; ++a) {
      CHECK(F.pow(F.pth_root(a), F.characteristic()) == a);
      auto r = F.sqrt(a);
      CHECK(r.has_value() == F.is_square(a));
      if (r) CHECK(F.mul(*r, *r) == a);
    }
  }
  const auto& F2 = GaloisField::get(2, 1);
  const auto& F4 = GaloisField::get(2, 2);
  const auto& F16 = GaloisField::get(2, 4);
  CHECK(F16.contains(F4));
  CHECK(!GaloisField::get(2, 3).contains(F4));
  for (GaloisField::Elem a = 0; a < 4; ++a)
    for (GaloisField::Elem b = 0; b < 4; ++b) {
      CHECK(F16.embed(F4, F4.mul(a, b)) == F16.mul(F16.embed(F4, a), F16.embed(F4, b)));
      CHECK(F16.embed(F4, F4.add(a, b)) == F16.add(F16.embed(F4, a), F16.embed(F4, b)));
    }
  CHECK(F4.embed(F2, 1) == 1);
}

TEST_CASE("ord examples") {
  const auto& F = GaloisField::get(3, 1);
  RatFunc a = parse_ratfunc(F, "t^2/(t+1)");
  CHECK(ord(Place::finite(P(F, "t")), a) == 2);
  CHECK(ord(Place::infinity(F), a) == -1);
  CHECK(ord(Place::finite(P(F, "t+1")), parse_ratfunc(F, "(t+1)^3")) == 3);
  CHECK_THROWS_AS(ord(Place::infinity(F), RatFunc(F)), DomainError);
  CHECK_THROWS_AS(Place::finite(P(F, "t^2+2*t+1")), DomainError);
}

TEST_CASE("ord is a valuation") {
  std::mt19937_64 rng(7);
  for (auto q : {2u, 3u, 4u, 5u}) {
    const auto& F = GaloisField::with_order(q);
    auto places = places_up_to(F, 2);
    for (int trial = 0; trial < 100; ++trial) {
      RatFunc a = random_nonzero_ratfunc(F, rng, 5), b = random_nonzero_ratfunc(F, rng, 5);
      for (const auto& v : places) {
        CHECK(ord(v, a * b) == ord(v, a) + ord(v, b));
        if (!(a + b).is_zero()) CHECK(ord(v, a + b) >= std::min(ord(v, a), ord(v, b)));
      }
    }
  }
}

TEST_CASE("factor examples") {
  const auto& F2 = GaloisField::get(2, 1);
  const auto& F3 = GaloisField::get(3, 1);
  auto f1 = factor(P(F2, "t^2+t"));
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].irreducible == P(F2, "t"));
  CHECK(f1.factors[1].irreducible == P(F2, "t+1"));
  auto f2 = factor(P(F2, "t^2+1"));
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].irreducible == P(F2, "t+1"));
  CHECK(f2.factors[0].multiplicity == 2);
  auto f3 = factor(P(F3, "t^2+1"));
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].multiplicity == 1);
  CHECK(oracle_irreducible(P(F3, "t^2+1")));
  CHECK_THROWS_AS(factor(Poly(F3)), DomainError);
}

TEST_CASE("factorization agrees with trial division and round-trips") {
  std::mt19937_64 rng(11);
  for (auto q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 60; ++trial) {
      Poly f = random_nonzero_poly(F, rng, q <= 3 ? 9 : 6);
      if (trial % 3 == 0) f = f * f * random_nonzero_poly(F, rng, 2);
      CAPTURE(format_poly(f));
      auto fac = factor(f, 1000 + trial);
      CHECK(fac.expand(F) == f);
      std::map<std::vector<GaloisField::Elem>, int> got;
      for (const auto& [g, e] : fac.factors) {
        CHECK(g.is_monic());
        CHECK(is_irreducible(g));
        got[g.coeffs()] += e;
      }
      CHECK(got == oracle_factor(f));
      auto again = factor(fac.expand(F), 99);
      CHECK(again.factors.size() == fac.factors.size());
      for (std::size_t i = 0; i < again.factors.size() && i < fac.factors.size(); ++i) {
        CHECK(again.factors[i].irreducible == fac.factors[i].irreducible);
        CHECK(again.factors[i].multiplicity == fac.factors[i].multiplicity);
      }
    }
  }
}

TEST_CASE("irreducibility test matches brute force") {
  std::mt19937_64 rng(5);
  for (auto q : {2u, 3u, 4u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 150; ++trial) {
      Poly f = random_nonzero_poly(F, rng, 7).monic();
      if (f.degree() < 1) continue;
      CHECK(is_irreducible(f) == oracle_irreducible(f));
    }
  }
}

TEST_CASE("roots are the zeros in the coefficient field") {
  std::mt19937_64 rng(3);
  for (auto q : {2u, 5u, 9u, 16u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 40; ++trial) {
      Poly f = random_nonzero_poly(F, rng, 8);
      std::vector<GaloisField::Elem> expect;
      for (GaloisField::Elem c = 0; c < q; ++c)
        if (f.degree() > 0 && f.eval(c) == 0) expect.push_back(c);
      CHECK(roots(f) == expect);
    }
  }
}

TEST_CASE("product formula on random rational functions") {
  std::mt19937_64 rng(2024);
  for (auto q : {2u, 3u, 4u, 5u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 250; ++trial) CHECK(product_formula_defect(random_nonzero_ratfunc(F, rng, 8)) == 0);
  }
  const auto& F3 = GaloisField::get(3, 1);
  CHECK(product_formula_defect(parse_ratfunc(F3, "(t^2+1)/t")) == 0);
  CHECK(product_formula_defect(parse_ratfunc(F3, "1")) == 0);
  CHECK(product_formula_defect(parse_ratfunc(F3, "t^5")) == 0);
  auto sup = support(parse_ratfunc(F3, "(t^2+1)/t"));
  REQUIRE(sup.size() == 3);
  CHECK(sup[0].is_infinite());
  CHECK(sup[1].uniformizer() == P(F3, "t"));
  CHECK(sup[2].uniformizer() == P(F3, "t^2+1"));
  CHECK_THROWS_AS(product_formula_defect(RatFunc(F3)), DomainError);
}

TEST_CASE("places_up_to and necklace counts") {
  const auto& F2 = GaloisField::get(2, 1);
  auto p1 = places_up_to(F2, 1);
  REQUIRE(p1.size() == 3);
  CHECK(p1[0].is_infinite());
  CHECK(p1[1].uniformizer() == P(F2, "t"));
  CHECK(p1[2].uniformizer() == P(F2, "t+1"));
  auto p2 = places_up_to(F2, 2);
  REQUIRE(p2.size() == 4);
  CHECK(p2[3].uniformizer() == P(F2, "t^2+t+1"));
  CHECK(places_up_to(GaloisField::get(3, 1), 1).size() == 4);
  for (auto q : {2u, 3u, 4u}) {
    const auto& F = GaloisField::with_order(q);
    auto places = places_up_to(F, 4);
    std::map<int, std::uint64_t> count;
    for (std::size_t i = 1; i < places.size(); ++i) {
      CHECK(places[i - 1] < places[i]);
      CHECK(oracle_irreducible(places[i].uniformizer()));
      count[places[i].degree()]++;
    }
    for (int e = 1; e <= 4; ++e) CHECK(count[e] == necklace_count(q, e));
  }
  CHECK(necklace_count(2, 4) == 3);
  CHECK(necklace_count(3, 2) == 3);
}

TEST_CASE("gcd divides and Bezout cofactors verify") {
  std::mt19937_64 rng(17);
  for (auto q : {2u, 3u, 4u, 7u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 100; ++trial) {
      Poly c = random_nonzero_poly(F, rng, 3);
      Poly a = random_poly(F, rng, 6) * c, b = random_poly(F, rng, 6) * c;
      Bezout bz = xgcd(a, b);
      CHECK(bz.gcd == gcd(a, b));
      CHECK(a * bz.u + b * bz.v == bz.gcd);
      if (bz.gcd.is_zero()) continue;
      CHECK((a % bz.gcd).is_zero());
      CHECK((b % bz.gcd).is_zero());
      if (!a.is_zero()) CHECK((bz.gcd % c.monic()).is_zero());
    }
  }
}

TEST_CASE("polynomial arithmetic identities") {
  std::mt19937_64 rng(23);
  for (auto q : {2u, 3u, 16u, 25u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 30; ++trial) {
      // Large enough to exercise Karatsuba.
      Poly a = random_nonzero_poly(F, rng, 140), b = random_nonzero_poly(F, rng, 140);
      Poly c = random_nonzero_poly(F, rng, 20);
      CHECK(a * b == b * a);
      CHECK((a + b) * c == a * c + b * c);
      auto [qq, r] = divmod(a * b + c, b);
      CHECK(qq * b + r == a * b + c);
      CHECK(r.degree() < b.degree());
      CHECK(exact_div(a * b, b) == a);
      GaloisField::Elem x = static_cast<GaloisField::Elem>(trial % q);
      CHECK((a * b).eval(x) == F.mul(a.eval(x), b.eval(x)));
    }
  }
}

TEST_CASE("text round trip") {
  std::mt19937_64 rng(29);
  for (auto q : {2u, 3u, 4u, 9u, 25u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 100; ++trial) {
      RatFunc r = random_nonzero_ratfunc(F, rng, 5);
      std::string s = format_ratfunc(r);
      CHECK(parse_ratfunc(F, s) == r);
      CHECK(format_ratfunc(parse_ratfunc(F, s)) == s);
    }
  }
  const auto& F4 = GaloisField::get(2, 2);
  CHECK(format_elem(F4, F4.generator()) == "g");
  CHECK(parse_elem(F4, "g^2+g") == 1);
  const auto& F3 = GaloisField::get(3, 1);
  CHECK(format_ratfunc(parse_ratfunc(F3, "(t^2+2*t+1)/(t+2)")) == "(t^2+2*t+1)/(t+2)");
  CHECK(format_ratfunc(parse_ratfunc(F3, "(t^2+1)/(2*t)")) == "(2*t^2+2)/(t)");
  CHECK_THROWS_AS(parse_ratfunc(F3, "t+"), ValidationError);
  CHECK_THROWS_AS(parse_ratfunc(F3, "1/(t-t)"), DomainError);
  CHECK_THROWS_AS(parse_poly(F3, "1/t"), ValidationError);
}

TEST_CASE("fast multiplication matches schoolbook") {
  std::mt19937_64 rng(31);
  for (auto q : {2u, 5u, 4u, 27u, 49u, 1024u}) {
    const auto& F = GaloisField::with_order(q);
    for (int trial = 0; trial < 6; ++trial) {
      Poly a = random_nonzero_poly(F, rng, 300 + 97 * trial), b = random_nonzero_poly(F, rng, 150 + 211 * trial);
      std::vector<GaloisField::Elem> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
      for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
          c[i + j] = F.add(c[i + j], F.mul(a.coeffs()[i], b.coeffs()[j]));
      CHECK(a * b == Poly(F, c));
    }
  }
}
