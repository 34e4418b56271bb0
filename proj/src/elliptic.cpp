#include "ffdyn/elliptic.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/kernels.hpp"
#include "ffdyn/text.hpp"

#include <algorithm>

namespace ffdyn {

namespace {

RatFunc c(const GaloisField& F, long long v) { return RatFunc::constant(F, F.from_int(v)); }

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// The curve with coefficients moved into the point's field.
const EllipticCurve& lifted(const EllipticCurve& E, const EPoint& P, EllipticCurve& storage) {
  if (P.infinity || &P.x.field() == &E.field()) return E;
  storage = E.over(P.x.field());
  return storage;
}

}  // namespace

EllipticCurve::EllipticCurve(const GaloisField& F, std::array<RatFunc, 5> a) : field_(&F), a_(std::move(a)) {
  for (auto& ai : a_) {
    if (ai.num().field_ptr() == nullptr && ai.den().field_ptr() == nullptr) ai = RatFunc(F);
    if (&ai.field() != &F) throw ValidationError("curve coefficients lie in different fields");
  }
  const auto& [a1, a2, a3, a4, a6] = a_;
  b2_ = a1 * a1 + c(F, 4) * a2;
  b4_ = c(F, 2) * a4 + a1 * a3;
  b6_ = a3 * a3 + c(F, 4) * a6;
  b8_ = a1 * a1 * a6 + c(F, 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  disc_ = -b2_ * b2_ * b8_ - c(F, 8) * b4_ * b4_ * b4_ - c(F, 27) * b6_ * b6_ + c(F, 9) * b2_ * b4_ * b6_;
  if (disc_.is_zero()) throw DomainError("singular Weierstrass equation (discriminant is 0)");
  const RatFunc c4 = b2_ * b2_ - c(F, 24) * b4_;
  j_ = c4 * c4 * c4 / disc_;
  KFrac phi{KPoly(F, {-b8_, -c(F, 2) * b6_, -b4_, RatFunc(F), c(F, 1)}),
            KPoly(F, {b6_, c(F, 2) * b4_, b2_, c(F, 4)})};
  dup_ = RationalMap::from_kfrac(phi);
}

EllipticCurve EllipticCurve::short_form(const RatFunc& a4, const RatFunc& a6) {
  const GaloisField& F = a4.field();
  if (F.characteristic() == 2 || F.characteristic() == 3)
    throw ValidationError("short Weierstrass form needs characteristic other than 2 and 3; give a1..a6");
  return EllipticCurve(F, {RatFunc(F), RatFunc(F), RatFunc(F), a4, a6});
}

bool EllipticCurve::constant_coefficients() const {
  return std::all_of(a_.begin(), a_.end(), [](const RatFunc& r) { return r.is_constant(); });
}

EllipticCurve EllipticCurve::over(const GaloisField& ext) const {
  if (&ext == field_) return *this;
  std::array<RatFunc, 5> b;
  for (std::size_t i = 0; i < 5; ++i) b[i] = embed(a_[i], ext);
  return EllipticCurve(ext, b);
}

std::string EllipticCurve::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < 5; ++i) s += (i ? ", " : "") + format_ratfunc(a_[i]);
  return s + "]";
}

bool on_curve(const EllipticCurve& E0, const EPoint& P) {
  if (P.infinity) return true;
  EllipticCurve storage;
  const EllipticCurve& E = lifted(E0, P, storage);
  const auto& x = P.x;
  const auto& y = P.y;
  return y * y + E.a1() * x * y + E.a3() * y == x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
}

void require_on_curve(const EllipticCurve& E, const EPoint& P) {
  if (!on_curve(E, P)) throw DomainError("point " + format_epoint(P) + " is not on the curve " + E.to_string());
}

EPoint neg(const EllipticCurve& E0, const EPoint& P) {
  if (P.infinity) return P;
  EllipticCurve storage;
  const EllipticCurve& E = lifted(E0, P, storage);
  return EPoint::affine(P.x, -P.y - E.a1() * P.x - E.a3(), P.extension);
}

EPoint add(const EllipticCurve& E0, const EPoint& P, const EPoint& Q) {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  if (&P.x.field() != &Q.x.field()) throw ValidationError("points lie over different constant fields");
  EllipticCurve storage;
  const EllipticCurve& E = lifted(E0, P, storage);
  const GaloisField& F = P.x.field();
  RatFunc lambda, nu;
  if (P.x == Q.x) {
    const RatFunc denom = c(F, 2) * P.y + E.a1() * P.x + E.a3();
    if (P.y + Q.y + E.a1() * Q.x + E.a3() == RatFunc(F) || denom.is_zero()) return EPoint::zero(P.extension);
    lambda = (c(F, 3) * P.x * P.x + c(F, 2) * E.a2() * P.x + E.a4() - E.a1() * P.y) / denom;
    nu = (-P.x * P.x * P.x + E.a4() * P.x + c(F, 2) * E.a6() - E.a3() * P.y) / denom;
  } else {
    const RatFunc dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  RatFunc x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  RatFunc y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return EPoint::affine(std::move(x3), std::move(y3), P.extension);
}

EPoint sub(const EllipticCurve& E, const EPoint& P, const EPoint& Q) { return add(E, P, neg(E, Q)); }

EPoint dbl(const EllipticCurve& E, const EPoint& P) { return add(E, P, P); }

EPoint mul(const EllipticCurve& E, long long n, const EPoint& P) {
  EPoint base = n < 0 ? neg(E, P) : P;
  unsigned long long k = n < 0 ? 0ull - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  EPoint acc = EPoint::zero(P.extension);
  while (k) {
    if (k & 1) acc = add(E, acc, base);
    k >>= 1;
    if (k) base = dbl(E, base);
  }
  return acc;
}

ProjPoint x_point(const EllipticCurve& E, const EPoint& P) {
  if (P.infinity) {
    const GaloisField& F = E.field();
    return ProjPoint::infinity(extension_field(F, P.extension), P.extension);
  }
  return ProjPoint::from_coords(P.x, RatFunc::constant(P.x.field(), 1), P.extension);
}

HeightEstimate nt_height(const EllipticCurve& E, const EPoint& P, const CanonicalHeightOptions& opt) {
  if (P.infinity) {
    HeightEstimate h;
    h.exact = true;
    return h;
  }
  require_on_curve(E, P);
  CanonicalHeightOptions o = opt;
  o.polarization = 1;
  return canonical_height(E.duplication_map(), x_point(E, P), o);
}

HeightEstimate nt_pairing(const EllipticCurve& E, const EPoint& P, const EPoint& Q, const CanonicalHeightOptions& opt) {
  auto hpq = nt_height(E, add(E, P, Q), opt);
  auto hp = nt_height(E, P, opt);
  auto hq = nt_height(E, Q, opt);
  HeightEstimate out;
  out.value = (hpq.value - hp.value - hq.value) / 2;
  out.error_bound = (hpq.error_bound + hp.error_bound + hq.error_bound) / 2;
  out.exact = hpq.exact && hp.exact && hq.exact;
  out.iterations = std::max({hpq.iterations, hp.iterations, hq.iterations});
  return out;
}

bool is_torsion(const EllipticCurve& E, const EPoint& P) {
  if (P.infinity) return true;
  require_on_curve(E, P);
  return is_preperiodic(E.duplication_map(), x_point(E, P));
}

namespace {

// Heights of each point and of each pairwise sum, then the pairings.
template <class MapFn>
HeightMatrix gram_from(const EllipticCurve& E, const std::vector<EPoint>& pts, const CanonicalHeightOptions& opt,
                       MapFn map_fn) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) jobs.push_back({i, j});
  // Job (i, i) computes h(P_i); job (i, j) computes h(P_i + P_j).
  std::vector<HeightEstimate> h = map_fn(jobs.size(), [&](std::size_t k) {
    auto [i, j] = jobs[k];
    return nt_height(E, i == j ? pts[i] : add(E, pts[i], pts[j]), opt);
  });
  std::vector<HeightEstimate> diag(n);
  for (std::size_t k = 0; k < jobs.size(); ++k)
    if (jobs[k].first == jobs[k].second) diag[jobs[k].first] = h[k];
  HeightMatrix G(n, std::vector<HeightEstimate>(n));
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto [i, j] = jobs[k];
    if (i == j) {
      G[i][i] = h[k];
      continue;
    }
    HeightEstimate e;
    e.value = (h[k].value - diag[i].value - diag[j].value) / 2;
    e.error_bound = (h[k].error_bound + diag[i].error_bound + diag[j].error_bound) / 2;
    e.exact = h[k].exact && diag[i].exact && diag[j].exact;
    e.iterations = std::max({h[k].iterations, diag[i].iterations, diag[j].iterations});
    G[i][j] = G[j][i] = e;
  }
  return G;
}

}  // namespace

HeightMatrix gram_matrix_serial(const EllipticCurve& E, const std::vector<EPoint>& points,
                                const CanonicalHeightOptions& opt) {
  for (const auto& P : points) require_on_curve(E, P);
  return gram_from(E, points, opt, [](std::size_t n, auto fn) { return kernels::map_indices_serial<HeightEstimate>(n, fn); });
}

HeightMatrix gram_matrix_parallel(const EllipticCurve& E, const std::vector<EPoint>& points,
                                  const CanonicalHeightOptions& opt, int threads) {
  for (const auto& P : points) require_on_curve(E, P);
  return gram_from(E, points, opt, [threads](std::size_t n, auto fn) {
    return kernels::map_indices_parallel<HeightEstimate>(n, fn, threads);
  });
}

std::optional<Poly> poly_sqrt(const Poly& f) {
  const GaloisField& F = f.field();
  if (f.is_zero()) return f;
  if (f.degree() % 2) return std::nullopt;
  const std::size_t n = f.degree() / 2;
  std::vector<GaloisField::Elem> s(n + 1, 0);
  if (F.characteristic() == 2) {
    for (std::size_t i = 0; i <= n; ++i) s[i] = F.pth_root(f.coeff(2 * i));
  } else {
    auto top = F.sqrt(f.lead());
    if (!top) return std::nullopt;
    s[n] = *top;
    const auto inv2 = F.inv(F.add(s[n], s[n]));
    for (std::size_t k = n; k-- > 0;) {
      GaloisField::Elem acc = f.coeff(n + k);
      for (std::size_t i = k + 1; i < n; ++i) {
        std::size_t j = n + k - i;
        if (j <= k || j >= n) continue;
        acc = F.sub(acc, F.mul(s[i], s[j]));
      }
      s[k] = F.mul(acc, inv2);
    }
  }
  Poly r(F, s);
  if (r * r != f) return std::nullopt;
  return r;
}

std::vector<EPoint> search_points(const EllipticCurve& E0, unsigned m, int max_degree) {
  if (E0.field().characteristic() == 2) throw UnsupportedError("point search needs odd characteristic");
  const GaloisField& F = extension_field(E0.field(), m);
  const EllipticCurve E = E0.over(F);
  const RatFunc four = c(F, 4), inv2 = c(F, 2).inverse(), two = c(F, 2);
  std::vector<EPoint> out;
  for (const auto& xp : polys_up_to(F, max_degree, false)) {
    RatFunc x(xp);
    RatFunc r = (four * x * x * x + E.b2() * x * x + two * E.b4() * x + E.b6()) / four;
    auto sn = poly_sqrt(r.num());
    if (!sn) continue;
    auto sd = poly_sqrt(r.den());
    if (!sd) continue;
    RatFunc s(*sn, *sd);
    RatFunc shift = (E.a1() * x + E.a3()) * inv2;
    std::vector<EPoint> two_pts{EPoint::affine(x, s - shift, m)};
    if (!s.is_zero()) two_pts.push_back(EPoint::affine(x, -s - shift, m));
    std::sort(two_pts.begin(), two_pts.end(), [](const EPoint& a, const EPoint& b) {
      if (a.y.num() != b.y.num()) return a.y.num() < b.y.num();
      return a.y.den() < b.y.den();
    });
    for (auto& P : two_pts) out.push_back(std::move(P));
  }
  return out;
}

std::vector<EPoint> constant_points(const EllipticCurve& E0, unsigned m) {
  if (!E0.constant_coefficients()) throw UnsupportedError("constant_points needs constant Weierstrass coefficients");
  const GaloisField& F = extension_field(E0.field(), m);
  const EllipticCurve E = E0.over(F);
  std::vector<EPoint> out{EPoint::zero(m)};
  for (GaloisField::Elem x = 0; x < F.order(); ++x)
    for (GaloisField::Elem y = 0; y < F.order(); ++y) {
      EPoint P = EPoint::affine(RatFunc::constant(F, x), RatFunc::constant(F, y), m);
      if (on_curve(E, P)) out.push_back(P);
    }
  return out;
}

TraceKernelReport trace_kernel_check(const EllipticCurve& E, const std::vector<EPoint>& points,
                                     const CanonicalHeightOptions& opt, int threads) {
  if (!E.isotrivial()) throw UnsupportedError("trace-kernel check needs an isotrivial curve (constant j)");
  if (!E.constant_coefficients())
    throw UnsupportedError(
        "trace-kernel check needs literally constant Weierstrass coefficients; the trace of a non-constant "
        "isotrivial model is not computed");
  TraceKernelReport rep;
  rep.gram = gram_matrix_parallel(E, points, opt, threads);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& P = points[i];
    if (!P.infinity && !(P.x.is_constant() && P.y.is_constant())) continue;
    rep.constant_indices.push_back(i);
    bool tors = is_torsion(E, P);
    rep.torsion.push_back(tors);
    if (!tors) {
      rep.pass = false;
      rep.message = "constant point " + format_epoint(P) + " is not torsion";
    }
    for (std::size_t j = 0; j < points.size(); ++j) {
      const auto& e = rep.gram[i][j];
      if (abs(e.value) > opt.eps + e.error_bound) {
        rep.pass = false;
        rep.message = "Gram entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + to_string(e.value) +
                      " is not 0 within eps";
      }
    }
  }
  return rep;
}

std::string format_epoint(const EPoint& P) {
  if (P.infinity) return "O";
  return "(" + format_ratfunc(P.x) + ", " + format_ratfunc(P.y) + ")";
}

EPoint parse_epoint(const GaloisField& field, std::string_view text, unsigned extension) {
  auto s = strip(text);
  if (s == "O" || s == "0") return EPoint::zero(extension);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw ValidationError("expected an elliptic point \"(x, y)\" or \"O\", got '" + std::string(text) + "'");
  auto parts = split_top_level(s.substr(1, s.size() - 2));
  if (parts.size() != 2) throw ValidationError("expected two coordinates in '" + std::string(text) + "'");
  return EPoint::affine(parse_ratfunc(field, parts[0]), parse_ratfunc(field, parts[1]), extension);
}

EllipticCurve parse_curve(const GaloisField& field, std::string_view text) {
  auto s = strip(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ValidationError("expected a curve \"[a1, a2, a3, a4, a6]\" or \"[a4, a6]\", got '" + std::string(text) + "'");
  auto parts = split_top_level(s.substr(1, s.size() - 2));
  std::vector<RatFunc> a;
  for (const auto& p : parts) a.push_back(parse_ratfunc(field, p));
  if (a.size() == 2) return EllipticCurve::short_form(a[0], a[1]);
  if (a.size() != 5) throw ValidationError("a curve needs 2 or 5 coefficients, got " + std::to_string(a.size()));
  return EllipticCurve(field, {a[0], a[1], a[2], a[3], a[4]});
}

}  // namespace ffdyn
