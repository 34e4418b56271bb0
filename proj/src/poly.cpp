#include "ffdyn/poly.hpp"

#include "ffdyn/errors.hpp"

#include <algorithm>
#include <cassert>

namespace ffdyn {

namespace {

using Elem = GaloisField::Elem;

constexpr std::size_t kKaratsubaThreshold = 48;

// out[0 .. na+nb-1) = a * b; out must be zero-initialised by the caller.
void schoolbook(const GaloisField& F, const Elem* a, std::size_t na, const Elem* b, std::size_t nb,
                Elem* out) {
  if (na == 0 || nb == 0) return;
  const std::uint32_t p = F.characteristic();
  if (F.degree() == 1) {
    std::vector<std::uint64_t> acc(na + nb - 1, 0);
    if (p == 2) {
      for (std::size_t i = 0; i < na; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < nb; ++j) acc[i + j] ^= b[j];
      }
      for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<Elem>(acc[k]);
      return;
    }
    for (std::size_t i = 0; i < na; ++i) {
      const std::uint64_t ai = a[i];
      if (!ai) continue;
      for (std::size_t j = 0; j < nb; ++j) acc[i + j] += ai * b[j];
      if ((i & 0xfff) == 0xfff)
        for (auto& x : acc) x %= p;
    }
    for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<Elem>(acc[k] % p);
    return;
  }
  for (std::size_t i = 0; i < na; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < nb; ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
}

void add_into(const GaloisField& F, Elem* dst, const Elem* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = F.add(dst[i], src[i]);
}

void sub_into(const GaloisField& F, Elem* dst, const Elem* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = F.sub(dst[i], src[i]);
}

// out[0 .. 2n-1) = a[0..n) * b[0..n); out zero-initialised.
void karatsuba(const GaloisField& F, const Elem* a, const Elem* b, std::size_t n, Elem* out) {
  if (n <= kKaratsubaThreshold) {
    schoolbook(F, a, n, b, n, out);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;  // hi >= lo
  std::vector<Elem> z0(2 * lo - 1, 0), z2(2 * hi - 1, 0), z1(2 * hi - 1, 0);
  karatsuba(F, a, b, lo, z0.data());
  karatsuba(F, a + lo, b + lo, hi, z2.data());
  std::vector<Elem> sa(a + lo, a + n), sb(b + lo, b + n);
  add_into(F, sa.data(), a, lo);
  add_into(F, sb.data(), b, lo);
  karatsuba(F, sa.data(), sb.data(), hi, z1.data());
  sub_into(F, z1.data(), z0.data(), z0.size());
  sub_into(F, z1.data(), z2.data(), z2.size());
  add_into(F, out, z0.data(), z0.size());
  add_into(F, out + lo, z1.data(), z1.size());
  add_into(F, out + 2 * lo, z2.data(), z2.size());
}

// Products via a number-theoretic transform modulo a 62-bit prime. Coefficients
// of F_{p^m} are packed as digit segments of length 2m-1 (Kronecker
// substitution), multiplied as integer polynomials, then reduced. Exact when
// min(na, nb) * m * (p-1)^2 < kNttPrime.
constexpr std::uint64_t kNttPrime = 4179340454199820289ull;  // 29 * 2^57 + 1
constexpr std::uint64_t kNttRoot = 3;
constexpr std::size_t kNttThreshold = 96;
using u128 = unsigned __int128;

struct Montgomery {
  std::uint64_t ninv;
  std::uint64_t r2;
  std::uint64_t one;
  Montgomery() {
    std::uint64_t inv = kNttPrime;
    for (int i = 0; i < 6; ++i) inv *= 2 - kNttPrime * inv;
    ninv = 0 - inv;
    const std::uint64_t r1 = static_cast<std::uint64_t>((u128(1) << 64) % kNttPrime);
    r2 = static_cast<std::uint64_t>(u128(r1) * r1 % kNttPrime);
    one = r1;
  }
  std::uint64_t reduce(u128 t) const {
    const std::uint64_t m = static_cast<std::uint64_t>(t) * ninv;
    const std::uint64_t r = static_cast<std::uint64_t>((t + u128(m) * kNttPrime) >> 64);
    return r >= kNttPrime ? r - kNttPrime : r;
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(u128(a) * b); }
  std::uint64_t to(std::uint64_t a) const { return mul(a, r2); }
  std::uint64_t from(std::uint64_t a) const { return reduce(a); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = one;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
};

const Montgomery& mont() {
  static const Montgomery m;
  return m;
}

void ntt(std::vector<std::uint64_t>& a, bool invert) {
  const Montgomery& M = mont();
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::uint64_t> tw;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = M.pow(M.to(kNttRoot), (kNttPrime - 1) / len);
    if (invert) w = M.pow(w, kNttPrime - 2);
    const std::size_t half = len / 2;
    tw.resize(half);
    tw[0] = M.one;
    for (std::size_t k = 1; k < half; ++k) tw[k] = M.mul(tw[k - 1], w);
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = M.mul(a[i + k + half], tw[k]);
        const std::uint64_t s = u + v;
        a[i + k] = s >= kNttPrime ? s - kNttPrime : s;
        a[i + k + half] = u >= v ? u - v : u + kNttPrime - v;
      }
  }
  if (invert) {
    const std::uint64_t ninv = M.pow(M.to(n), kNttPrime - 2);
    for (auto& x : a) x = M.mul(x, ninv);
  }
}

bool ntt_applicable(const GaloisField& F, std::size_t na, std::size_t nb) {
  const std::size_t n = std::min(na, nb);
  if (n < kNttThreshold) return false;
  const u128 p1 = F.characteristic() - 1;
  const std::size_t seg = 2 * F.degree() - 1;
  if ((na + nb) * seg > (std::size_t{1} << 57)) return false;
  return u128(n) * F.degree() * p1 * p1 < kNttPrime;
}

std::vector<Elem> ntt_multiply(const GaloisField& F, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  const Montgomery& M = mont();
  const std::size_t m = F.degree(), seg = 2 * m - 1;
  const std::size_t out_len = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out_len * seg) n <<= 1;
  auto pack = [&](const std::vector<Elem>& v) {
    std::vector<std::uint64_t> r(n, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (m == 1) {
        r[i] = M.to(v[i]);
        continue;
      }
      auto d = F.digits(v[i]);
      for (std::size_t j = 0; j < m; ++j) r[i * seg + j] = M.to(d[j]);
    }
    return r;
  };
  std::vector<std::uint64_t> fa = pack(a), fb = pack(b);
  ntt(fa, false);
  ntt(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = M.mul(fa[i], fb[i]);
  ntt(fa, true);
  const std::uint64_t p = F.characteristic();
  std::vector<Elem> out(out_len);
  if (m == 1) {
    for (std::size_t i = 0; i < out_len; ++i) out[i] = static_cast<Elem>(M.from(fa[i]) % p);
    return out;
  }
  const auto& mod = F.modulus();
  std::vector<std::uint64_t> d(seg);
  std::vector<std::uint32_t> digits(m);
  for (std::size_t i = 0; i < out_len; ++i) {
    for (std::size_t j = 0; j < seg; ++j) d[j] = M.from(fa[i * seg + j]) % p;
    for (std::size_t k = seg; k-- > m;) {
      const std::uint64_t c = d[k];
      if (!c) continue;
      for (std::size_t j = 0; j <= m; ++j) d[k - m + j] = (d[k - m + j] + (p - c) * mod[j]) % p;
    }
    for (std::size_t j = 0; j < m; ++j) digits[j] = static_cast<std::uint32_t>(d[j]);
    out[i] = F.from_digits(digits);
  }
  return out;
}

std::vector<Elem> multiply(const GaloisField& F, const std::vector<Elem>& a, const std::vector<Elem>& b) {
  if (a.empty() || b.empty()) return {};
  if (ntt_applicable(F, a.size(), b.size())) return ntt_multiply(F, a, b);
  const std::vector<Elem>& big = a.size() >= b.size() ? a : b;
  const std::vector<Elem>& small = a.size() >= b.size() ? b : a;
  std::vector<Elem> out(a.size() + b.size() - 1, 0);
  const std::size_t n = small.size();
  if (n <= kKaratsubaThreshold) {
    schoolbook(F, big.data(), big.size(), small.data(), n, out.data());
    return out;
  }
  std::vector<Elem> chunk(n), part(2 * n - 1);
  for (std::size_t off = 0; off < big.size(); off += n) {
    std::size_t len = std::min(n, big.size() - off);
    std::fill(chunk.begin(), chunk.end(), 0);
    std::copy(big.begin() + off, big.begin() + off + len, chunk.begin());
    std::fill(part.begin(), part.end(), 0);
    karatsuba(F, chunk.data(), small.data(), n, part.data());
    std::size_t used = std::min(part.size(), out.size() - off);
    add_into(F, out.data() + off, part.data(), used);
  }
  return out;
}

}  // namespace

Poly::Poly(const GaloisField& field, std::vector<Elem> coeffs) : field_(&field), coeffs_(std::move(coeffs)) {
  trim();
}

Poly Poly::constant(const GaloisField& field, Elem c) { return Poly(field, {c}); }

Poly Poly::monomial(const GaloisField& field, Elem c, std::size_t degree) {
  if (c == 0) return Poly(field);
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(field, std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scaled(field_->inv(lead()));
}

Poly Poly::scaled(Elem c) const {
  if (c == 0) return Poly(*field_);
  Poly r = *this;
  for (auto& x : r.coeffs_) x = field_->mul(x, c);
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  Poly r(*field_);
  r.coeffs_.assign(k, 0);
  r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
  return r;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly(*field_);
  std::vector<Elem> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    d[i - 1] = field_->mul(coeffs_[i], field_->from_int(static_cast<long long>(i % field_->characteristic())));
  return Poly(*field_, std::move(d));
}

Poly::Elem Poly::eval(Elem x) const {
  Elem acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

Poly Poly::reversed(std::size_t n) const {
  if (is_zero()) return *this;
  assert(static_cast<int>(n) >= degree());
  std::vector<Elem> v(n + 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[n - i] = coeffs_[i];
  return Poly(*field_, std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (!field_) field_ = o.field_;
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_->add(coeffs_[i], o.coeffs_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (!field_) field_ = o.field_;
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_->sub(coeffs_[i], o.coeffs_[i]);
  trim();
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& x : r.coeffs_) x = a.field_->neg(x);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  const GaloisField* F = a.field_ ? a.field_ : b.field_;
  if (a.is_zero() || b.is_zero()) return F ? Poly(*F) : Poly();
  return Poly(*F, multiply(*F, a.coeffs_, b.coeffs_));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const GaloisField& F = b.field();
  if (a.degree() < b.degree()) return {Poly(F), a.field_ptr() ? a : Poly(F)};
  std::vector<Elem> r = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Elem> q(r.size() - db, 0);
  const Elem inv_lead = F.inv(b.lead());
  const auto& bc = b.coeffs();
  for (std::size_t k = r.size(); k-- > db;) {
    Elem c = r[k];
    if (c == 0) continue;
    c = F.mul(c, inv_lead);
    q[k - db] = c;
    const Elem nc = F.neg(c);
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.add(r[k - db + i], F.mul(nc, bc[i]));
  }
  r.resize(db);
  return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = a.coeffs_.size(); i-- > 0;)
    if (auto c = a.coeffs_[i] <=> b.coeffs_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t Poly::hash() const {
  std::size_t h = 0xcbf29ce484222325ull ^ coeffs_.size();
  for (Elem c : coeffs_) h = (h ^ c) * 0x100000001b3ull;
  return h;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Bezout xgcd(const Poly& a, const Poly& b) {
  const GaloisField& F = a.field_ptr() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F, 1), s1(F);
  Poly t0(F), t1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Elem inv = F.inv(r0.lead());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly powmod(Poly base, std::uint64_t e, const Poly& modulus) {
  const GaloisField& F = modulus.field();
  Poly result = Poly::constant(F, 1) % modulus;
  base = base % modulus;
  while (e > 0) {
    if (e & 1) result = (result * base) % modulus;
    e >>= 1;
    if (e) base = (base * base) % modulus;
  }
  return result;
}

Poly frobenius_pow(const Poly& base, std::uint32_t k, const Poly& modulus) {
  Poly r = base % modulus;
  for (std::uint32_t i = 0; i < k; ++i) r = powmod(r, modulus.field().order(), modulus);
  return r;
}

Poly pow(const Poly& base, std::uint64_t e) {
  Poly result = Poly::constant(base.field(), 1);
  Poly b = base;
  while (e > 0) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

Poly embed(const Poly& p, const GaloisField& ext) {
  if (!p.field_ptr() || p.field_ptr() == &ext) return p.field_ptr() ? p : Poly(ext);
  std::vector<Elem> c(p.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = ext.embed(p.field(), p.coeffs()[i]);
  return Poly(ext, std::move(c));
}

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const GaloisField& F = f.field();
  const Poly t = Poly::variable(F);
  // t^(Q^k) mod f for k = 1..n
  std::vector<Poly> frob(n + 1);
  frob[0] = t % f;
  for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], F.order(), f);
  if (!(frob[n] - t).is_zero() && !((frob[n] - t) % f).is_zero()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(static_cast<std::uint64_t>(r))) continue;
    Poly g = gcd(frob[n / r] - t, f);
    if (g.degree() > 0) return false;
  }
  return true;
}

}  // namespace ffdyn
