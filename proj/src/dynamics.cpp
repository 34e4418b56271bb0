#include "ffdyn/dynamics.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/linalg.hpp"
#include "ffdyn/text.hpp"

#include <unordered_set>

namespace ffdyn {

namespace {

using ZPoly = std::vector<Poly>;

ZPoly zmul(const ZPoly& a, const ZPoly& b, const GaloisField& F) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1, Poly(F));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

void zadd_scaled(ZPoly& acc, const ZPoly& a, const Poly& c, const GaloisField& F) {
  if (c.is_zero()) return;
  if (acc.size() < a.size()) acc.resize(a.size(), Poly(F));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) acc[i] += a[i] * c;
}

int zdegree(const ZPoly& a) {
  for (std::size_t k = a.size(); k-- > 0;)
    if (!a[k].is_zero()) return static_cast<int>(k);
  return -1;
}

// sum_i c_i P^i Q^(d-i)
ZPoly homogeneous_substitute(const ZPoly& c, const ZPoly& P, const ZPoly& Q, const GaloisField& F) {
  const std::size_t d = c.size() - 1;
  std::vector<ZPoly> pp{ZPoly{Poly::constant(F, 1)}}, qp{ZPoly{Poly::constant(F, 1)}};
  for (std::size_t i = 1; i <= d; ++i) {
    pp.push_back(zmul(pp.back(), P, F));
    qp.push_back(zmul(qp.back(), Q, F));
  }
  ZPoly out;
  for (std::size_t i = 0; i <= d; ++i) zadd_scaled(out, zmul(pp[i], qp[d - i], F), c[i], F);
  return out;
}

}  // namespace

Poly homogeneous_resultant(const std::vector<Poly>& F, const std::vector<Poly>& G) {
  const std::size_t d = F.size() - 1;
  const GaloisField& K = F.back().field_ptr() ? F.back().field() : G.back().field();
  const Poly zero(K);
  if (d == 0) return Poly::constant(K, 1);
  Matrix<Poly> m(2 * d, std::vector<Poly>(2 * d, zero));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k <= d; ++k) {
      m[r][r + k] = F[d - k];
      m[d + r][r + k] = G[d - k];
    }
  return bareiss_determinant<Poly>(
      std::move(m), Poly::constant(K, 1), [](const Poly& a, const Poly& b) { return exact_div(a, b); },
      [](const Poly& a) { return a.is_zero(); });
}

RationalMap RationalMap::from_polys(std::vector<Poly> num, std::vector<Poly> den) {
  const GaloisField* F = nullptr;
  for (const auto& c : num)
    if (c.field_ptr()) F = c.field_ptr();
  for (const auto& c : den)
    if (c.field_ptr()) F = c.field_ptr();
  if (!F) throw DomainError("map has no coefficients");
  for (auto* v : {&num, &den})
    for (auto& c : *v) {
      if (!c.field_ptr()) c = Poly(*F);
      if (&c.field() != F) throw ValidationError("map coefficients lie in different fields");
    }
  if (zdegree(den) < 0) throw DomainError("map denominator is zero");
  const int d = std::max(zdegree(num), zdegree(den));
  num.resize(d + 1, Poly(*F));
  den.resize(d + 1, Poly(*F));
  Poly content(*F);
  for (const auto* v : {&num, &den})
    for (const auto& c : *v) content = gcd(content, c);
  if (!content.is_one())
    for (auto* v : {&num, &den})
      for (auto& c : *v)
        if (!c.is_zero()) c = exact_div(c, content);
  const auto inv = F->inv(den[zdegree(den)].lead());
  for (auto* v : {&num, &den})
    for (auto& c : *v) c = c.scaled(inv);
  RationalMap f;
  f.field_ = F;
  f.degree_ = d;
  f.num_ = std::move(num);
  f.den_ = std::move(den);
  f.finish();
  return f;
}

void RationalMap::finish() {
  if (degree_ < 2) throw DomainError("map degree must be at least 2, got " + std::to_string(degree_));
  resultant_ = homogeneous_resultant(num_, den_);
  if (resultant_.is_zero())
    throw DomainError("numerator and denominator share a factor (resultant is 0); not a morphism of degree " +
                      std::to_string(degree_));
  coefficient_height_ = 0;
  for (const auto* v : {&num_, &den_})
    for (const auto& c : *v) coefficient_height_ = std::max<long long>(coefficient_height_, c.degree());
}

RationalMap RationalMap::from_kfrac(const KFrac& f) {
  const GaloisField& F = *f.num.field;
  Poly L = Poly::constant(F, 1);
  for (const auto* k : {&f.num, &f.den})
    for (const auto& c : k->coeffs)
      if (!c.is_zero()) L = exact_div(L * c.den(), gcd(L, c.den()));
  auto clear = [&](const KPoly& k) {
    std::vector<Poly> out;
    for (const auto& c : k.coeffs) out.push_back(c.is_zero() ? Poly(F) : c.num() * exact_div(L, c.den()));
    if (out.empty()) out.push_back(Poly(F));
    return out;
  };
  return from_polys(clear(f.num), clear(f.den));
}

RationalMap RationalMap::parse(const GaloisField& field, std::string_view text) {
  return from_kfrac(parse_zexpr(field, text));
}

RationalMap RationalMap::over(const GaloisField& ext) const {
  if (&ext == field_) return *this;
  if (!ext.contains(*field_))
    throw ValidationError("field " + ext.name() + " does not contain the map's field " + field_->name());
  RationalMap g = *this;
  g.field_ = &ext;
  for (auto* v : {&g.num_, &g.den_})
    for (auto& c : *v) c = embed(c, ext);
  g.resultant_ = embed(resultant_, ext);
  return g;
}

RationalMap RationalMap::compose(const RationalMap& g) const {
  if (g.field_ != field_) throw ValidationError("composition of maps over different fields");
  return from_polys(homogeneous_substitute(num_, g.num_, g.den_, *field_),
                    homogeneous_substitute(den_, g.num_, g.den_, *field_));
}

std::string RationalMap::num_string() const { return format_zpoly(num_); }
std::string RationalMap::den_string() const { return format_zpoly(den_); }

std::string RationalMap::to_string() const {
  std::string d = den_string();
  if (d == "1") return num_string();
  return "(" + num_string() + ")/(" + d + ")";
}

namespace {

ProjPoint evaluate_same_field(const RationalMap& f, const ProjPoint& x) {
  const GaloisField& F = f.field();
  const std::size_t d = f.degree();
  const Poly& a = x.a();
  const Poly& b = x.b();
  std::vector<Poly> mono(d + 1);
  if (b.is_one()) {
    mono[0] = Poly::constant(F, 1);
    for (std::size_t i = 1; i <= d; ++i) mono[i] = mono[i - 1] * a;
  } else if (b.is_zero()) {
    for (auto& m : mono) m = Poly(F);
    mono[d] = Poly::constant(F, 1);
  } else {
    std::vector<Poly> pa(d + 1), pb(d + 1);
    pa[0] = pb[0] = Poly::constant(F, 1);
    for (std::size_t i = 1; i <= d; ++i) {
      pa[i] = pa[i - 1] * a;
      pb[i] = pb[i - 1] * b;
    }
    for (std::size_t i = 0; i <= d; ++i) mono[i] = pa[i] * pb[d - i];
  }
  Poly u(F), v(F);
  for (std::size_t i = 0; i <= d; ++i) {
    if (!f.num()[i].is_zero()) u += f.num()[i] * mono[i];
    if (!f.den()[i].is_zero()) v += f.den()[i] * mono[i];
  }
  const Poly& res = f.resultant();
  if (res.degree() > 0) {
    Poly g = gcd(res, gcd(u % res, v % res));
    if (g.degree() > 0) {
      u = exact_div(u, g);
      v = exact_div(v, g);
    }
  }
  return ProjPoint::from_coprime(std::move(u), std::move(v), x.extension());
}

const RationalMap& lifted(const RationalMap& f, const ProjPoint& x, RationalMap& storage) {
  if (&x.field() == &f.field()) return f;
  storage = f.over(x.field());
  return storage;
}

}  // namespace

ProjPoint evaluate(const RationalMap& f, const ProjPoint& x) {
  RationalMap storage;
  return evaluate_same_field(lifted(f, x, storage), x);
}

ProjPoint iterate(const RationalMap& f, const ProjPoint& x, std::uint64_t n) {
  RationalMap storage;
  const RationalMap& g = lifted(f, x, storage);
  ProjPoint y = x;
  for (std::uint64_t i = 0; i < n; ++i) y = evaluate_same_field(g, y);
  return y;
}

Rational gap_constant(const RationalMap& f) {
  return Rational(2 * f.degree() - 1) * f.coefficient_height();
}

long long preperiodic_height_bound(const RationalMap& f) {
  return static_cast<long long>(ceil(gap_constant(f) / (f.degree() - 1)));
}

long long polarized_height(const ProjPoint& x, unsigned d) {
  // Veronese coordinates a^i b^(d-i) are coprime as a tuple, with top degree d*h.
  return static_cast<long long>(d) * x.height();
}

HeightEstimate canonical_height(const RationalMap& f, const ProjPoint& x, const CanonicalHeightOptions& opt) {
  if (opt.eps <= 0) throw ValidationError("eps must be positive");
  if (opt.polarization == 0) throw ValidationError("polarization degree must be positive");
  RationalMap storage;
  const RationalMap& g = lifted(f, x, storage);
  const Rational C = gap_constant(g) * opt.polarization;
  HeightEstimate out;
  if (C == 0) {
    out.value = polarized_height(x, opt.polarization);
    out.exact = true;
    return out;
  }
  const Integer d = g.degree();
  std::uint64_t N = 0;
  Integer dN = 1;
  while (C / (dN * (d - 1)) > opt.eps) {
    ++N;
    dN *= d;
    if (N > opt.iteration_cap)
      throw ResourceError("canonical height needs more than the iteration cap of " +
                          std::to_string(opt.iteration_cap) + " iterations (reached N = " + std::to_string(N) +
                          ")");
  }
  // A repeat among low-height orbit points proves preperiodicity: height 0 exactly.
  const long long B = preperiodic_height_bound(g);
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  bool tracking = true;
  ProjPoint y = x;
  for (std::uint64_t n = 0; n < N; ++n) {
    if (tracking) {
      if (y.height() > B) {
        tracking = false;
        seen.clear();
      } else if (!seen.insert(y).second) {
        out.value = 0;
        out.exact = true;
        out.iterations = n;
        return out;
      }
    }
    y = evaluate_same_field(g, y);
  }
  out.value = Rational(polarized_height(y, opt.polarization)) / dN;
  out.error_bound = C / (dN * (d - 1));
  out.iterations = N;
  return out;
}

bool is_preperiodic(const RationalMap& f, const ProjPoint& x) {
  RationalMap storage;
  const RationalMap& g = lifted(f, x, storage);
  const long long B = preperiodic_height_bound(g);
  std::unordered_set<ProjPoint, ProjPointHash> seen;
  ProjPoint y = x;
  for (;;) {
    if (y.height() > B) return false;
    if (!seen.insert(y).second) return true;
    y = evaluate_same_field(g, y);
  }
}

std::string format_height_estimate(const HeightEstimate& h) {
  if (h.exact) return to_string(h.value) + " (exact)";
  return to_string(h.value) + " +/- " + to_string(h.error_bound);
}

}  // namespace ffdyn
