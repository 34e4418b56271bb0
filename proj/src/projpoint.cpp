#include "ffdyn/projpoint.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/text.hpp"

#include <cctype>
#include <algorithm>
#include <climits>
#include <map>
#include <random>

namespace ffdyn {

ProjPoint ProjPoint::from_polys(Poly a, Poly b, unsigned extension) {
  if (a.is_zero() && b.is_zero()) throw DomainError("[0 : 0] is not a point of P^1");
  const GaloisField& F = a.is_zero() ? b.field() : a.field();
  if (a.is_zero()) return ProjPoint(Poly(F), Poly::constant(F, 1), extension);
  if (b.is_zero()) return ProjPoint(Poly::constant(F, 1), Poly(F), extension);
  Poly g = gcd(a, b);
  if (g.degree() > 0) {
    a = exact_div(a, g);
    b = exact_div(b, g);
  }
  if (!b.is_monic()) {
    auto inv = F.inv(b.lead());
    a = a.scaled(inv);
    b = b.scaled(inv);
  }
  return ProjPoint(std::move(a), std::move(b), extension);
}

ProjPoint ProjPoint::from_coprime(Poly a, Poly b, unsigned extension) {
  if (a.is_zero() && b.is_zero()) throw DomainError("[0 : 0] is not a point of P^1");
  const GaloisField& F = a.is_zero() ? b.field() : a.field();
  if (b.is_zero()) return ProjPoint(Poly::constant(F, 1), Poly(F), extension);
  if (!b.is_monic()) {
    auto inv = F.inv(b.lead());
    a = a.scaled(inv);
    b = b.scaled(inv);
  }
  if (a.is_zero()) a = Poly(F);
  return ProjPoint(std::move(a), std::move(b), extension);
}

ProjPoint ProjPoint::from_coords(const RatFunc& a, const RatFunc& b, unsigned extension) {
  // [a1/a2 : b1/b2] = [a1 b2 : b1 a2]
  return from_polys(a.num() * b.den(), b.num() * a.den(), extension);
}

ProjPoint ProjPoint::infinity(const GaloisField& field, unsigned extension) {
  return ProjPoint(Poly::constant(field, 1), Poly(field), extension);
}

ProjPoint ProjPoint::affine(const Poly& a, unsigned extension) {
  return ProjPoint(a, Poly::constant(a.field(), 1), extension);
}

std::strong_ordering operator<=>(const ProjPoint& x, const ProjPoint& y) {
  if (x.is_infinity() || y.is_infinity()) return x.is_infinity() <=> y.is_infinity();
  if (auto c = x.b_ <=> y.b_; c != 0) return c;
  return x.a_ <=> y.a_;
}

LocalHeightProfile local_heights(const RatFunc& a, const RatFunc& b, std::uint64_t seed) {
  if (a.is_zero() && b.is_zero()) throw DomainError("[0 : 0] is not a point of P^1");
  std::vector<Place> places;
  for (const RatFunc* c : {&a, &b}) {
    if (c->is_zero()) continue;
    auto s = support(*c, seed);
    places.insert(places.end(), s.begin(), s.end());
  }
  // Infinity always participates: a constant pair still has ord_inf = 0 there.
  places.push_back(Place::infinity(a.is_zero() ? b.field() : a.field()));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());

  LocalHeightProfile profile;
  profile.total = 0;
  for (const auto& v : places) {
    int m = INT_MAX;
    if (!a.is_zero()) m = std::min(m, ord(v, a));
    if (!b.is_zero()) m = std::min(m, ord(v, b));
    if (m == 0) continue;
    Rational value(-m);
    profile.total += value * v.degree();
    profile.terms.push_back({v, value});
  }
  return profile;
}

LocalHeightProfile local_heights(const ProjPoint& x, std::uint64_t seed) {
  return local_heights(RatFunc(x.a()), x.is_infinity() ? RatFunc(x.field()) : RatFunc(x.b()), seed);
}

Integer point_count(std::uint64_t Q, long long H) {
  Integer n = 1;
  for (long long i = 0; i < 2 * H + 1; ++i) n *= Q;
  return n + 1;
}

const GaloisField& extension_field(const GaloisField& base, unsigned m) {
  if (m == 0) throw ValidationError("extension index must be >= 1");
  return GaloisField::get(base.characteristic(), base.degree() * m);
}

std::vector<Poly> polys_up_to(const GaloisField& F, long long H, bool monic_only) {
  std::vector<Poly> out;
  const std::uint64_t Q = F.order();
  if (!monic_only) out.emplace_back(F);
  for (long long e = 0; e <= H; ++e) {
    std::uint64_t lower = 1;
    for (long long i = 0; i < e; ++i) lower *= Q;
    const GaloisField::Elem lead_lo = 1;
    const GaloisField::Elem lead_hi = monic_only ? 1 : static_cast<GaloisField::Elem>(Q - 1);
    for (GaloisField::Elem lead = lead_lo; lead <= lead_hi; ++lead) {
      for (std::uint64_t code = 0; code < lower; ++code) {
        std::vector<GaloisField::Elem> c(static_cast<std::size_t>(e) + 1);
        std::uint64_t r = code;
        for (long long i = 0; i < e; ++i) {
          c[i] = static_cast<GaloisField::Elem>(r % Q);
          r /= Q;
        }
        c[e] = lead;
        out.emplace_back(F, std::move(c));
      }
    }
  }
  return out;
}

std::vector<ProjPoint> enumerate_block(const Poly& b, long long H, unsigned extension) {
  std::vector<ProjPoint> out;
  for (auto& a : polys_up_to(b.field(), H, false)) {
    if (b.degree() == 0 ? false : gcd(a, b).degree() > 0) continue;
    if (a.is_zero() && b.degree() > 0) continue;  // [0 : b] = [0 : 1]
    out.push_back(ProjPoint::from_polys(std::move(a), b, extension));
  }
  return out;
}

void check_enumeration_cap(std::uint64_t Q, long long H, std::uint64_t cap) {
  if (H < 0) throw ValidationError("height bound must be >= 0");
  Integer n = point_count(Q, H);
  if (n > cap)
    throw ResourceError("enumeration up to height " + std::to_string(H) + " over F_" + std::to_string(Q) +
                        "(t) has Q^(2H+1)+1 = " + n.str() + " points, exceeding the cap " + std::to_string(cap));
}

std::vector<ProjPoint> enumerate_points(const GaloisField& base, unsigned m, long long H, std::uint64_t cap) {
  const GaloisField& F = extension_field(base, m);
  check_enumeration_cap(F.order(), H, cap);
  std::vector<ProjPoint> out;
  for (const auto& b : polys_up_to(F, H, true)) {
    auto block = enumerate_block(b, H, m);
    out.insert(out.end(), std::make_move_iterator(block.begin()), std::make_move_iterator(block.end()));
  }
  out.push_back(ProjPoint::infinity(F, m));
  return out;
}

std::string format_point(const ProjPoint& x) {
  if (x.is_infinity()) return "[1 : 0]";
  return "[" + format_poly(x.a()) + " : " + format_poly(x.b()) + "]";
}

ProjPoint parse_point(const GaloisField& field, std::string_view text, unsigned extension) {
  auto open = text.find('[');
  auto colon = text.find(':');
  auto close = text.rfind(']');
  if (open == std::string_view::npos || colon == std::string_view::npos || close == std::string_view::npos ||
      !(open < colon && colon < close))
    throw ValidationError("point literal must look like '[a : b]', got '" + std::string(text) + "'");
  for (std::size_t i = 0; i < open; ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i]))) throw ValidationError("junk before point literal");
  RatFunc a = parse_ratfunc(field, text.substr(open + 1, colon - open - 1));
  RatFunc b = parse_ratfunc(field, text.substr(colon + 1, close - colon - 1));
  return ProjPoint::from_coords(a, b, extension);
}

std::vector<ProjPoint> random_points(const GaloisField& base, unsigned m, long long H, std::size_t count,
                                     std::uint64_t seed) {
  if (H < 0) throw DomainError("height bound must be >= 0");
  const GaloisField& F = extension_field(base, m);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> el(0, F.order() - 1);
  auto draw = [&] {
    std::vector<GaloisField::Elem> c(static_cast<std::size_t>(H) + 1);
    for (auto& x : c) x = el(rng);
    return Poly(F, c);
  };
  std::vector<ProjPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    Poly a = draw(), b = draw();
    if (a.is_zero() && b.is_zero()) continue;
    out.push_back(ProjPoint::from_polys(a, b, m));
  }
  return out;
}

}  // namespace ffdyn
