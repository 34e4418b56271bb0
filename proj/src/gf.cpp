#include "ffdyn/gf.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/poly.hpp"

#include <memory>
#include <map>
#include <mutex>

namespace ffdyn {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FieldRegistry {
  std::recursive_mutex mutex;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<GaloisField>> fields;

  static FieldRegistry& instance() {
    static FieldRegistry registry;
    return registry;
  }

  const GaloisField& get(std::uint32_t p, std::uint32_t m) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(p, m);
    if (auto it = fields.find(key); it != fields.end()) return *it->second;
    std::unique_ptr<GaloisField> field(new GaloisField(p, m));
    auto& ref = *field;
    fields.emplace(key, std::move(field));
    ref.build_embeddings();
    return ref;
  }
};

const GaloisField& GaloisField::get(std::uint32_t p, std::uint32_t m) {
  if (!is_prime(p)) throw ValidationError("field characteristic " + std::to_string(p) + " is not prime");
  if (m == 0) throw ValidationError("field degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder)
      throw ResourceError("field F_" + std::to_string(p) + "^" + std::to_string(m) +
                          " exceeds the supported order 2^20");
  }
  return FieldRegistry::instance().get(p, m);
}

const GaloisField& GaloisField::with_order(std::uint64_t q) {
  if (q < 2) throw ValidationError("field order must be a prime power >= 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t m = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) throw ValidationError("field order " + std::to_string(q) + " is not a prime power");
  if (q > kMaxOrder) throw ResourceError("field order " + std::to_string(q) + " exceeds 2^20");
  return get(static_cast<std::uint32_t>(p), m);
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t m) : p_(p), m_(m), q_(1) {
  for (std::uint32_t i = 0; i < m; ++i) q_ *= p;
  if (m == 1) {
    modulus_ = {0, 1};
  } else {
    const GaloisField& prime = get(p, 1);
    std::uint32_t lower_count = q_;
    for (std::uint32_t code = 0; code < lower_count; ++code) {
      std::vector<Elem> c(m + 1);
      std::uint32_t r = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        c[i] = r % p;
        r /= p;
      }
      c[m] = 1;
      if (c[0] == 0) continue;
      if (is_irreducible(Poly(prime, c))) {
        modulus_ = c;
        break;
      }
    }
    if (modulus_.empty()) throw DomainError("no irreducible polynomial found");  // unreachable
  }
  build_tables();
}

std::string GaloisField::name() const { return "F" + std::to_string(q_); }

GaloisField::Elem GaloisField::generator() const {
  if (m_ == 1) throw DomainError("prime field " + name() + " has no generator symbol g");
  return p_;
}

GaloisField::Elem GaloisField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

GaloisField::Elem GaloisField::add_digits(Elem a, Elem b) const {
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    out += s * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (p_ == 2 || a == 0) return a;
  if (m_ == 1) return p_ - a;
  Elem out = 0;
  Elem place = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    std::uint32_t d = a % p_;
    out += (d == 0 ? 0 : p_ - d) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

GaloisField::Elem GaloisField::slow_mul(Elem a, Elem b) const {
  if (m_ == 1) return static_cast<Elem>((std::uint64_t{a} * b) % p_);
  auto da = digits(a);
  auto db = digits(b);
  std::vector<std::uint64_t> prod(2 * m_ - 1, 0);
  for (std::uint32_t i = 0; i < m_; ++i)
    for (std::uint32_t j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p_;
  for (std::size_t k = prod.size(); k-- > m_;) {
    std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < m_; ++i)
      prod[k - m_ + i] = (prod[k - m_ + i] + (p_ - modulus_[i]) * c) % p_;
  }
  std::vector<std::uint32_t> d(m_);
  for (std::uint32_t i = 0; i < m_; ++i) d[i] = static_cast<std::uint32_t>(prod[i]);
  return from_digits(d);
}

void GaloisField::build_tables() {
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    exp_[0] = 1;
    return;
  }
  for (Elem cand = 2; cand < q_; ++cand) {
    Elem x = 1;
    std::uint32_t k = 0;
    bool primitive = true;
    for (; k < q_ - 1; ++k) {
      if (x == 1 && k > 0) {
        primitive = false;
        break;
      }
      exp_[k] = x;
      x = slow_mul(x, cand);
    }
    if (primitive) break;
  }
  for (std::uint32_t k = 0; k < q_ - 1; ++k) log_[exp_[k]] = k;
}

void GaloisField::build_embeddings() {
  embeddings_.assign(m_, {});
  for (std::uint32_t d = 1; d < m_; ++d) {
    if (m_ % d != 0) continue;
    const GaloisField& sub = get(p_, d);
    Elem root = 0;
    if (d == 1) {
      root = 0;
    } else {
      bool found = false;
      for (Elem r = 0; r < q_ && !found; ++r) {
        Elem acc = 0;
        for (std::size_t i = sub.modulus_.size(); i-- > 0;) acc = add(mul(acc, r), from_int(sub.modulus_[i]));
        if (acc == 0) {
          root = r;
          found = true;
        }
      }
    }
    std::vector<Elem>& table = embeddings_[d];
    table.resize(sub.q_);
    for (Elem a = 0; a < sub.q_; ++a) {
      auto dg = sub.digits(a);
      Elem acc = 0;
      for (std::size_t i = dg.size(); i-- > 0;) acc = add(mul(acc, root), from_int(dg[i]));
      table[a] = acc;
    }
  }
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + name());
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (q_ == 2) return 1;
  std::uint64_t k = (std::uint64_t{log_[a]} * (e % (q_ - 1))) % (q_ - 1);
  return exp_[k];
}

GaloisField::Elem GaloisField::pth_root(Elem a) const {
  std::uint64_t e = 1;
  for (std::uint32_t i = 1; i < m_; ++i) e *= p_;
  return pow(a, e);
}

bool GaloisField::is_square(Elem a) const {
  if (a == 0 || p_ == 2) return true;
  return log_[a] % 2 == 0;
}

std::optional<GaloisField::Elem> GaloisField::sqrt(Elem a) const {
  if (a == 0) return Elem{0};
  if (p_ == 2) return pow(a, q_ / 2);
  if (log_[a] % 2 != 0) return std::nullopt;
  Elem r = exp_[log_[a] / 2];
  Elem s = neg(r);
  return r < s ? r : s;
}

std::vector<std::uint32_t> GaloisField::digits(Elem a) const {
  std::vector<std::uint32_t> d(m_);
  for (std::uint32_t i = 0; i < m_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

GaloisField::Elem GaloisField::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem out = 0;
  for (std::size_t i = d.size(); i-- > 0;) out = out * p_ + d[i];
  return out;
}

bool GaloisField::contains(const GaloisField& sub) const {
  return sub.p_ == p_ && m_ % sub.m_ == 0;
}

GaloisField::Elem GaloisField::embed(const GaloisField& sub, Elem a) const {
  if (&sub == this) return a;
  if (!contains(sub)) throw DomainError(sub.name() + " is not a subfield of " + name());
  return embeddings_[sub.m_][a];
}

}  // namespace ffdyn
