#include "ffdyn/place.hpp"

#include "ffdyn/errors.hpp"

#include <algorithm>

namespace ffdyn {

Place Place::finite(Poly pi) {
  if (!pi.is_monic() || !is_irreducible(pi)) throw DomainError("place polynomial must be monic irreducible");
  const GaloisField& F = pi.field();
  return Place(F, std::move(pi));
}

std::strong_ordering operator<=>(const Place& a, const Place& b) {
  if (a.is_infinite() || b.is_infinite()) return b.is_infinite() <=> a.is_infinite();
  return a.uniformizer() <=> b.uniformizer();
}

bool operator==(const Place& a, const Place& b) { return (a <=> b) == 0; }

int ord(const Place& v, const Poly& a) {
  if (a.is_zero()) throw DomainError("valuation of zero is undefined");
  if (v.is_infinite()) return -a.degree();
  const Poly& pi = v.uniformizer();
  int k = 0;
  Poly r = a;
  while (true) {
    auto [q, rem] = divmod(r, pi);
    if (!rem.is_zero()) break;
    r = std::move(q);
    ++k;
  }
  return k;
}

int ord(const Place& v, const RatFunc& a) {
  if (a.is_zero()) throw DomainError("valuation of zero is undefined");
  return ord(v, a.num()) - ord(v, a.den());
}

std::vector<Place> support(const RatFunc& a, std::uint64_t seed) {
  if (a.is_zero()) throw DomainError("support of zero is undefined");
  std::vector<Place> out;
  if (a.num().degree() != a.den().degree()) out.push_back(Place::infinity(a.field()));
  for (const Poly* p : {&a.num(), &a.den()})
    if (p->degree() > 0)
      for (const auto& f : factor(*p, seed).factors) out.push_back(Place::finite_trusted(f.irreducible));
  std::sort(out.begin(), out.end());
  return out;
}

long long product_formula_defect(const RatFunc& a, std::uint64_t seed) {
  if (a.is_zero()) throw DomainError("product formula undefined at zero");
  long long total = 0;
  for (const auto& v : support(a, seed)) total += static_cast<long long>(v.degree()) * ord(v, a);
  return total;
}

std::vector<Place> places_up_to(const GaloisField& field, int d) {
  if (d < 1) throw ValidationError("places_up_to requires d >= 1");
  std::vector<Place> out{Place::infinity(field)};
  const std::uint64_t Q = field.order();
  for (int e = 1; e <= d; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) {
      count *= Q;
      if (count > (std::uint64_t{1} << 24)) throw ResourceError("places_up_to: too many candidates");
    }
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<GaloisField::Elem> c(static_cast<std::size_t>(e) + 1);
      std::uint64_t r = code;
      for (int i = 0; i < e; ++i) {
        c[i] = static_cast<GaloisField::Elem>(r % Q);
        r /= Q;
      }
      c[e] = 1;
      Poly pi(field, std::move(c));
      if (is_irreducible(pi)) out.push_back(Place::finite_trusted(std::move(pi)));
    }
  }
  return out;
}

namespace {
int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}
}  // namespace

std::uint64_t necklace_count(std::uint64_t Q, int e) {
  long long total = 0;
  for (int j = 1; j <= e; ++j) {
    if (e % j != 0) continue;
    long long pw = 1;
    for (int i = 0; i < e / j; ++i) pw *= static_cast<long long>(Q);
    total += mobius(j) * pw;
  }
  return static_cast<std::uint64_t>(total / e);
}

}  // namespace ffdyn
