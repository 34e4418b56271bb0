#include "ffdyn/lattice.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/factor.hpp"
#include "ffdyn/text.hpp"

#include <cctype>
#include <stdexcept>

namespace ffdyn {

std::string KodairaType::name() const {
  switch (kind) {
    case KodairaKind::I: return "I" + std::to_string(n);
    case KodairaKind::II: return "II";
    case KodairaKind::III: return "III";
    case KodairaKind::IV: return "IV";
    case KodairaKind::IStar: return "I" + std::to_string(n) + "*";
    case KodairaKind::IVStar: return "IV*";
    case KodairaKind::IIIStar: return "III*";
    case KodairaKind::IIStar: return "II*";
  }
  return "?";
}

KodairaType KodairaType::parse(std::string_view s) {
  static const std::map<std::string, KodairaKind, std::less<>> fixed{
      {"II", KodairaKind::II},       {"III", KodairaKind::III},     {"IV", KodairaKind::IV},
      {"IV*", KodairaKind::IVStar}, {"III*", KodairaKind::IIIStar}, {"II*", KodairaKind::IIStar}};
  if (auto it = fixed.find(s); it != fixed.end()) return {it->second, 0};
  std::string_view body = s;
  bool star = false;
  if (!body.empty() && body.back() == '*') {
    star = true;
    body.remove_suffix(1);
  }
  if (body.size() >= 2 && body[0] == 'I') {
    std::string digits(body.substr(1));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(c); }) &&
        digits.size() < 6)
      return {star ? KodairaKind::IStar : KodairaKind::I, std::stoi(digits)};
  }
  throw ValidationError("unknown Kodaira type '" + std::string(s) + "'");
}

namespace {

using IMatrix = std::vector<std::vector<long long>>;

void link(IMatrix& m, std::size_t i, std::size_t j, long long k = 1) {
  m[i][j] += k;
  m[j][i] += k;
}

// Dual graph given as an edge list; every component is a (-2)-curve.
FiberConfig from_graph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       std::vector<long long> mult) {
  FiberConfig cfg;
  cfg.matrix.assign(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) cfg.matrix[i][i] = -2;
  for (auto [i, j] : edges) link(cfg.matrix, i, j);
  cfg.mult = std::move(mult);
  return cfg;
}

}  // namespace

FiberConfig kodaira_template(KodairaType type, std::string place) {
  FiberConfig cfg;
  switch (type.kind) {
    case KodairaKind::I:
      if (type.n < 0) throw ValidationError("I_n needs n >= 0");
      if (type.n <= 1) {
        cfg.matrix = {{0}};
        cfg.mult = {1};
      } else {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (int i = 0; i < type.n; ++i) edges.push_back({i, (i + 1) % type.n});
        cfg = from_graph(type.n, edges, std::vector<long long>(type.n, 1));
      }
      break;
    case KodairaKind::II:
      cfg.matrix = {{0}};
      cfg.mult = {1};
      break;
    case KodairaKind::III:
      cfg.matrix = {{-2, 2}, {2, -2}};
      cfg.mult = {1, 1};
      break;
    case KodairaKind::IV:
      cfg = from_graph(3, {{0, 1}, {1, 2}, {0, 2}}, {1, 1, 1});
      break;
    case KodairaKind::IStar: {
      if (type.n < 0) throw ValidationError("I_n* needs n >= 0");
      // 0, 1 near the identity end of the chain; 2, 3 at the far end.
      const std::size_t n = type.n, first = 4, last = 4 + n;
      std::vector<std::pair<std::size_t, std::size_t>> edges{{0, first}, {1, first}, {2, last}, {3, last}};
      for (std::size_t k = first; k < last; ++k) edges.push_back({k, k + 1});
      std::vector<long long> mult{1, 1, 1, 1};
      mult.resize(n + 5, 2);
      cfg = from_graph(n + 5, edges, mult);
      break;
    }
    case KodairaKind::IVStar:
      cfg = from_graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {5, 6}}, {1, 2, 3, 2, 1, 2, 1});
      break;
    case KodairaKind::IIIStar:
      cfg = from_graph(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {3, 7}}, {1, 2, 3, 4, 3, 2, 1, 2});
      break;
    case KodairaKind::IIStar:
      cfg = from_graph(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {5, 8}},
                       {1, 2, 3, 4, 5, 6, 4, 2, 3});
      break;
  }
  cfg.type = type;
  cfg.place = std::move(place);
  cfg.identity = 0;
  return cfg;
}

void validate_shape(const FiberConfig& cfg) {
  const std::size_t n = cfg.mult.size();
  const std::string where = cfg.place.empty() ? "" : " at place " + cfg.place;
  if (n == 0) throw ValidationError("fiber" + where + " has no components");
  if (cfg.matrix.size() != n)
    throw ValidationError("fiber" + where + ": matrix has " + std::to_string(cfg.matrix.size()) + " rows but " +
                          std::to_string(n) + " multiplicities");
  for (std::size_t i = 0; i < n; ++i) {
    if (cfg.matrix[i].size() != n) throw ValidationError("fiber" + where + ": row " + std::to_string(i) + " has wrong length");
    if (cfg.mult[i] <= 0) throw ValidationError("fiber" + where + ": multiplicity of component " + std::to_string(i) + " is not positive");
    for (std::size_t j = 0; j < n; ++j) {
      if (cfg.matrix[i][j] != cfg.matrix[j][i])
        throw ValidationError("fiber" + where + ": row " + std::to_string(i) + " breaks symmetry at column " + std::to_string(j));
      if (i != j && cfg.matrix[i][j] < 0)
        throw ValidationError("fiber" + where + ": row " + std::to_string(i) + " has a negative off-diagonal entry");
    }
  }
  if (cfg.identity >= n) throw ValidationError("fiber" + where + ": identity component out of range");
  if (cfg.mult[cfg.identity] != 1) throw ValidationError("fiber" + where + ": identity component must have multiplicity 1");
}

void validate_fiber(const FiberConfig& cfg) {
  validate_shape(cfg);
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < cfg.size(); ++j) s += cfg.mult[j] * cfg.matrix[i][j];
    if (s != 0)
      throw ValidationError("fiber at place " + cfg.place + ": row " + std::to_string(i) +
                            " has sum_j m_j M_ij = " + std::to_string(s) + ", expected 0");
  }
}

LocalHodgeReport check_local_hodge(const FiberConfig& cfg) {
  validate_shape(cfg);
  LocalHodgeReport rep;
  const std::size_t n = cfg.size();
  Matrix<Rational> M(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M[i][j] = cfg.matrix[i][j];
  for (std::size_t i = 0; i < n && rep.fiber_trivial; ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < n; ++j) s += cfg.mult[j] * cfg.matrix[i][j];
    if (s != 0) {
      rep.fiber_trivial = false;
      rep.witness = "row " + std::to_string(i) + ": sum_j m_j M_ij = " + std::to_string(s);
    }
  }
  auto verdict = check_negative_semidefinite(M);
  rep.pivots = verdict.pivots;
  rep.semidefinite = verdict.negative_semidefinite;
  if (!rep.semidefinite && rep.witness.empty())
    rep.witness = "pivot " + std::to_string(verdict.witness_index) + " = " + to_string(verdict.witness_value) +
                  " breaks negative semidefiniteness";
  rep.kernel = nullspace(M);
  rep.kernel_matches = rep.kernel.size() == 1;
  if (rep.kernel_matches) {
    // Proportional to mult: v_i m_0 = v_0 m_i.
    const auto& v = rep.kernel[0];
    for (std::size_t i = 0; i < n; ++i)
      if (v[i] * cfg.mult[0] != v[0] * cfg.mult[i]) rep.kernel_matches = false;
  }
  if (!rep.kernel_matches && rep.witness.empty())
    rep.witness = "kernel has dimension " + std::to_string(rep.kernel.size()) + " and is not span(mult)";
  rep.pass = rep.fiber_trivial && rep.semidefinite && rep.kernel_matches;
  return rep;
}

std::string format_place(const Place& v) { return v.is_infinite() ? "inf" : format_poly(v.uniformizer()); }

Place parse_place(const GaloisField& field, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "inf" || s == "oo" || s == "infinity") return Place::infinity(field);
  Poly p = parse_poly(field, s);
  if (p.degree() < 1) throw ValidationError("place '" + std::string(text) + "' is not a nonconstant polynomial");
  return Place::finite(p.monic());
}

LocalHeightProfile section_intersection(const ProjPoint& x, const ProjPoint& y, std::uint64_t seed) {
  if (x == y) throw DomainError("section_intersection needs distinct sections; use the self-intersection");
  if (&x.field() != &y.field()) throw ValidationError("sections lie over different constant fields");
  const GaloisField& F = x.field();
  LocalHeightProfile prof;
  const long long hx = x.height(), hy = y.height();
  const Poly xa = x.a().field_ptr() ? x.a() : Poly(F), ya = y.a().field_ptr() ? y.a() : Poly(F);
  const Poly xb = x.b().field_ptr() ? x.b() : Poly(F), yb = y.b().field_ptr() ? y.b() : Poly(F);
  const Poly cross = xa * yb - ya * xb;
  const Poly cross_inf = xa.reversed(hx) * yb.reversed(hy) - ya.reversed(hy) * xb.reversed(hx);
  int inf_ord = 0;
  while (cross_inf.coeff(inf_ord) == 0) ++inf_ord;
  if (inf_ord) prof.terms.push_back({Place::infinity(F), Rational(inf_ord)});
  if (cross.degree() > 0)
    for (const auto& [pi, e] : factor(cross, seed).factors) prof.terms.push_back({Place::finite_trusted(pi), Rational(e)});
  for (const auto& t : prof.terms) prof.total += t.value * t.place.degree();
  if (prof.total != hx + hy)
    throw std::logic_error("section intersection total " + to_string(prof.total) + " differs from h(x)+h(y) = " +
                           std::to_string(hx + hy));
  return prof;
}

long long section_self_intersection(const ProjPoint& x) { return 2 * x.height(); }

const Section& Model::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return s;
  throw ValidationError("insufficient model data: no section named '" + name + "'");
}

const FiberConfig* Model::fiber(const std::string& place) const {
  for (const auto& f : fibers)
    if (f.place == place) return &f;
  return nullptr;
}

void Model::validate() const {
  if (!field) throw ValidationError("model has no field");
  std::map<std::string, int> names;
  for (const auto& s : sections) {
    if (s.name.empty()) throw ValidationError("model section without a name");
    if (++names[s.name] > 1) throw ValidationError("duplicate section name '" + s.name + "'");
    if (kind == ModelKind::Trivial && !s.point) throw ValidationError("trivial-model section '" + s.name + "' needs a point");
    for (const auto& [place, comp] : s.incidence) {
      const FiberConfig* f = fiber(place);
      if (!f) {
        if (comp != 0)
          throw ValidationError("section '" + s.name + "' meets component " + std::to_string(comp) +
                                " of the undeclared (irreducible) fiber at " + place);
        continue;
      }
      if (comp >= f->size())
        throw ValidationError("section '" + s.name + "' meets component " + std::to_string(comp) +
                              " which does not exist at place " + place);
      if (f->mult[comp] != 1)
        throw ValidationError("section '" + s.name + "' meets component " + std::to_string(comp) + " of multiplicity " +
                              std::to_string(f->mult[comp]) + " at place " + place);
    }
  }
  for (const auto& f : fibers) validate_fiber(f);
  if (kind == ModelKind::Trivial && !fibers.empty())
    for (const auto& f : fibers)
      if (f.size() != 1) throw UnsupportedError("the trivial model P^1 x B has only irreducible fibers");
}

Rational generic_degree(const ModelDivisor& D) {
  Rational d = 0;
  for (const auto& [name, n] : D.horizontal) d += n;
  return d;
}

namespace {

int place_degree(const Model& model, const std::string& place) {
  if (const FiberConfig* f = model.fiber(place)) return f->place_degree;
  return parse_place(*model.field, place).degree();
}

std::size_t incidence(const Model& model, const Section& s, const FiberConfig& f) {
  if (f.size() == 1) return 0;
  auto it = s.incidence.find(f.place);
  if (it == s.incidence.end())
    throw ValidationError("insufficient model data: section '" + s.name + "' has no incidence at place " + f.place);
  (void)model;
  return it->second;
}

FiberConfig irreducible_fiber(const std::string& place, int degree) {
  FiberConfig f = kodaira_template({KodairaKind::I, 0}, place);
  f.place_degree = degree;
  return f;
}

}  // namespace

Rational section_self_intersection(const Model& model, const std::string& name) {
  const Section& s = model.section(name);
  if (model.kind == ModelKind::Trivial) return section_self_intersection(*s.point);
  if (!s.self) throw ValidationError("insufficient model data: section '" + name + "' has no self-intersection");
  return *s.self;
}

Rational section_pairing(const Model& model, const std::string& a, const std::string& b) {
  if (a == b) return section_self_intersection(model, a);
  const Section& sa = model.section(a);
  const Section& sb = model.section(b);
  if (model.kind == ModelKind::Trivial) {
    if (*sa.point == *sb.point) return section_self_intersection(*sa.point);
    return section_intersection(*sa.point, *sb.point).total;
  }
  const std::map<std::string, long long>* local = nullptr;
  if (auto it = sa.local_cross.find(b); it != sa.local_cross.end()) local = &it->second;
  if (auto it = sb.local_cross.find(a); it != sb.local_cross.end()) {
    if (local && *local != it->second)
      throw ValidationError("local intersection data for sections '" + a + "' and '" + b + "' disagree");
    local = &it->second;
  }
  if (!local) throw ValidationError("insufficient model data: no local intersections for sections '" + a + "' and '" + b + "'");
  Rational total = 0;
  for (const auto& [place, n] : *local) {
    if (n < 0) throw ValidationError("negative local intersection of '" + a + "' and '" + b + "' at place " + place);
    total += Rational(n) * place_degree(model, place);
  }
  return total;
}

ModelDivisor flat_correction(const Model& model, const ModelDivisor& D, const Rational& shift) {
  if (generic_degree(D) != 0)
    throw DomainError("flat correction needs generic degree 0, got " + to_string(generic_degree(D)));
  ModelDivisor out = D;
  for (const auto& f : model.fibers) {
    const std::size_t n = f.size();
    std::vector<Rational> h(n, 0);
    for (const auto& [name, mult] : D.horizontal) h[incidence(model, model.section(name), f)] += mult;
    std::vector<Rational> V(n, 0);
    if (auto it = D.vertical.find(f.place); it != D.vertical.end()) {
      if (it->second.size() != n)
        throw ValidationError("vertical part at place " + f.place + " has " + std::to_string(it->second.size()) +
                              " coefficients, fiber has " + std::to_string(n) + " components");
      V = it->second;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h[i] += Rational(f.matrix[i][j]) * V[j];
    Rational ortho = 0;
    for (std::size_t i = 0; i < n; ++i) ortho += h[i] * f.mult[i];
    if (ortho != 0) throw ValidationError("inconsistent incidence data at place " + f.place + ": D . F_v != 0");
    // Solve M phi = -h with phi[identity] = 0.
    Matrix<Rational> A(n, std::vector<Rational>());
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (j != f.identity) A[i].push_back(f.matrix[i][j]);
      rhs[i] = -h[i];
    }
    std::vector<Rational> phi(n, 0);
    if (n > 1) {
      auto sol = solve(A, rhs);
      if (!sol) throw ValidationError("inconsistent incidence data at place " + f.place + ": no vertical correction");
      for (std::size_t j = 0, k = 0; j < n; ++j)
        if (j != f.identity) phi[j] = (*sol)[k++];
    }
    for (std::size_t j = 0; j < n; ++j) phi[j] += shift * f.mult[j];
    auto& target = out.vertical[f.place];
    target.resize(n, 0);
    for (std::size_t j = 0; j < n; ++j) target[j] += phi[j];
  }
  return out;
}

Rational intersect(const Model& model, const ModelDivisor& D, const ModelDivisor& E) {
  Rational total = 0;
  for (const auto& [a, n] : D.horizontal)
    for (const auto& [b, m] : E.horizontal)
      if (n != 0 && m != 0) total += n * m * section_pairing(model, a, b);
  auto fiber_for = [&](const std::string& place) {
    if (const FiberConfig* f = model.fiber(place)) return *f;
    return irreducible_fiber(place, place_degree(model, place));
  };
  // Horizontal against vertical, both ways.
  auto hv = [&](const ModelDivisor& H, const ModelDivisor& V) {
    Rational s = 0;
    for (const auto& [place, coeffs] : V.vertical) {
      FiberConfig f = fiber_for(place);
      if (coeffs.size() != f.size())
        throw ValidationError("vertical part at place " + place + " has the wrong number of coefficients");
      for (const auto& [name, n] : H.horizontal)
        s += n * coeffs[incidence(model, model.section(name), f)] * f.place_degree;
    }
    return s;
  };
  total += hv(D, E) + hv(E, D);
  for (const auto& [place, u] : D.vertical) {
    auto it = E.vertical.find(place);
    if (it == E.vertical.end()) continue;
    FiberConfig f = fiber_for(place);
    const auto& w = it->second;
    if (u.size() != f.size() || w.size() != f.size())
      throw ValidationError("vertical part at place " + place + " has the wrong number of coefficients");
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j) total += u[i] * w[j] * f.matrix[i][j] * f.place_degree;
  }
  return total;
}

Rational model_pairing(const Model& model, const ModelDivisor& D, const ModelDivisor& E) {
  return intersect(model, flat_correction(model, D), flat_correction(model, E));
}

FaltingsHriljacReport faltings_hriljac_check(const Model& model, const ModelDivisor& D, const CanonicalHeightOptions& opt) {
  FaltingsHriljacReport rep;
  rep.pairing = model_pairing(model, D, D);
  if (model.kind == ModelKind::Trivial) {
    // Degree-0 divisors on P^1 are principal: trivial Jacobian.
    rep.hx.exact = true;
    rep.class_point = "trivial";
  } else {
    if (!model.curve) throw ValidationError("insufficient model data: an abstract model needs its generic curve");
    const EllipticCurve& E = *model.curve;
    EPoint cls = EPoint::zero();
    for (const auto& [name, n] : D.horizontal) {
      if (denominator(n) != 1) throw ValidationError("class of D needs integer multiplicities");
      const Section& s = model.section(name);
      if (!s.epoint) throw ValidationError("insufficient model data: section '" + name + "' has no point of E(K)");
      cls = add(E, cls, mul(E, static_cast<long long>(numerator(n)), *s.epoint));
    }
    rep.class_point = format_epoint(cls);
    rep.hx = nt_height(E, cls, opt);
  }
  rep.expected = -rep.hx.value;
  rep.difference = rep.pairing - rep.expected;
  rep.bound = rep.hx.error_bound;
  rep.pass = abs(rep.difference) <= 2 * rep.bound;
  return rep;
}

}  // namespace ffdyn
