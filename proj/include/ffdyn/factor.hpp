#pragma once

#include "ffdyn/poly.hpp"

#include <cstdint>
#include <vector>

namespace ffdyn {

inline constexpr std::uint64_t kDefaultSeed = 20240521;

struct Factor {
  Poly irreducible;  // monic
  int multiplicity;
};

struct Factorization {
  GaloisField::Elem unit;        // leading coefficient of the input
  std::vector<Factor> factors;   // sorted by irreducible (degree, then coefficients)
  std::uint64_t seed;            // PRNG seed used for equal-degree splitting

  /// unit * prod irreducible^multiplicity.
  Poly expand(const GaloisField& field) const;
};

/// Squarefree decomposition: monic squarefree s_i with f = lead * prod s_i^i.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

/// Distinct-degree factorization of a monic squarefree f: (product of all
/// irreducible factors of degree d, d) for each d that occurs.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f);

/// Factorization into monic irreducibles. Squarefree decomposition, then
/// distinct-degree, then randomized equal-degree splitting driven by a
/// mt19937_64 seeded with `seed`. The factor multiset does not depend on the
/// seed; only the work done to find it does. Throws DomainError for f = 0.
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultSeed);

/// Roots of f in its coefficient field, ascending, without multiplicity.
std::vector<GaloisField::Elem> roots(const Poly& f, std::uint64_t seed = kDefaultSeed);

}  // namespace ffdyn
