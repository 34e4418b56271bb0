#include "ffdyn/factor.hpp"

#include "ffdyn/errors.hpp"

#include <algorithm>
#include <random>

namespace ffdyn {

namespace {

using Elem = GaloisField::Elem;

// f(t) = g(t^p): returns g^(1/p) coefficientwise.
Poly pth_root_poly(const Poly& f) {
  const GaloisField& F = f.field();
  const std::uint32_t p = F.characteristic();
  std::vector<Elem> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(F.pth_root(f.coeffs()[i]));
  return Poly(F, std::move(c));
}

Poly random_poly(const GaloisField& F, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> dist(0, F.order() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(below_degree));
  for (auto& x : c) x = dist(rng);
  return Poly(F, std::move(c));
}

// Splits a monic squarefree f whose irreducible factors all have degree d.
void equal_degree(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const GaloisField& F = f.field();
  const std::uint32_t Q = F.order();
  while (true) {
    Poly a = random_poly(F, f.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b;
    if (F.characteristic() == 2) {
      // Trace from F_{Q^d} to F_2: a + a^2 + ... + a^(2^(kd - 1)).
      const std::uint32_t steps = F.degree() * static_cast<std::uint32_t>(d);
      Poly term = a % f;
      b = term;
      for (std::uint32_t i = 1; i < steps; ++i) {
        term = (term * term) % f;
        b += term;
      }
    } else {
      // a^((Q^d - 1)/2) = (a^(1 + Q + ... + Q^(d-1)))^((Q - 1)/2)
      Poly norm = a % f;
      Poly frob = norm;
      for (int i = 1; i < d; ++i) {
        frob = powmod(frob, Q, f);
        norm = (norm * frob) % f;
      }
      b = powmod(norm, (Q - 1) / 2, f) - Poly::constant(F, 1);
    }
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

Poly Factorization::expand(const GaloisField& field) const {
  Poly r = Poly::constant(field, unit);
  for (const auto& [irr, mult] : factors) r = r * pow(irr, static_cast<std::uint64_t>(mult));
  return r;
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw DomainError("squarefree decomposition of zero polynomial");
  std::vector<std::pair<Poly, int>> out;
  const GaloisField& F = f.field();
  const int p = static_cast<int>(F.characteristic());
  Poly g = f.monic();
  int scale = 1;
  while (g.degree() > 0) {
    Poly c = gcd(g, g.derivative());
    Poly w = exact_div(g, c);
    int i = 1;
    while (w.degree() > 0) {
      Poly y = gcd(w, c);
      Poly z = exact_div(w, y);
      if (z.degree() > 0) out.emplace_back(z, i * scale);
      w = y;
      c = exact_div(c, y);
      ++i;
    }
    // c is now a p-th power (possibly 1).
    if (c.degree() > 0) {
      g = pth_root_poly(c);
      scale *= p;
    } else {
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, int>> out;
  const GaloisField& F = f.field();
  const Poly t = Poly::variable(F);
  Poly rest = f;
  Poly h = t % rest;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = powmod(h, F.order(), rest);
    Poly g = gcd(h - t, rest);
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = exact_div(rest, g);
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  Factorization result{f.lead(), {}, seed};
  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : squarefree_decomposition(f)) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) result.factors.push_back({std::move(g), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return a.irreducible < b.irreducible; });
  return result;
}

std::vector<GaloisField::Elem> roots(const Poly& f, std::uint64_t seed) {
  std::vector<Elem> out;
  if (f.degree() <= 0) return out;
  const GaloisField& F = f.field();
  for (const auto& fac : factor(f, seed).factors)
    if (fac.irreducible.degree() == 1) out.push_back(F.neg(fac.irreducible.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ffdyn
