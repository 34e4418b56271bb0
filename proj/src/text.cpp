#include "ffdyn/text.hpp"

#include "ffdyn/errors.hpp"

#include <cctype>

namespace ffdyn {

namespace {

using Elem = GaloisField::Elem;

bool single_term(const GaloisField& F, Elem a) {
  int nonzero = 0;
  for (auto d : F.digits(a)) nonzero += d != 0;
  return nonzero <= 1;
}

std::string monomial(char var, std::size_t k) {
  std::string s(1, var);
  if (k > 1) s += "^" + std::to_string(k);
  return s;
}

// Recursive-descent parser over a semantic domain supplying the arithmetic.
template <class Sem>
class Parser {
 public:
  using Value = typename Sem::Value;

  Parser(const Sem& sem, std::string_view text) : sem_(sem), text_(text) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(text_) +
                          "': " + what);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (accept('+')) {
        v = sem_.add(v, term());
      } else if (accept('-')) {
        v = sem_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (accept('*')) {
        v = sem_.mul(v, unary());
      } else if (accept('/')) {
        v = sem_.div(v, unary());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) return sem_.neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Value power() {
    Value base = atom();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      if (pos_ - start > 9) fail("exponent too large");
      return sem_.pow(base, std::stol(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  Value atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long r = 0;
      const long long p = sem_.characteristic();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        r = (r * 10 + (text_[pos_++] - '0')) % p;
      return sem_.number(r);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto v = sem_.symbol(name);
      if (!v) {
        pos_ = start;
        fail("unknown symbol '" + std::string(name) + "'");
      }
      return *v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const Sem& sem_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

struct TSem {
  using Value = RatFunc;
  const GaloisField& F;
  long long characteristic() const { return F.characteristic(); }
  Value number(long long v) const { return RatFunc::constant(F, F.from_int(v)); }
  std::optional<Value> symbol(std::string_view name) const {
    if (name == "t") return RatFunc(Poly::variable(F));
    if (name == "g") {
      if (F.degree() == 1) return std::nullopt;
      return RatFunc::constant(F, F.generator());
    }
    return std::nullopt;
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const {
    if (b.is_zero()) throw DomainError("division by zero in expression");
    return a / b;
  }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, long e) const { return ffdyn::pow(a, e); }
};

struct ZSem {
  using Value = KFrac;
  const GaloisField& F;
  long long characteristic() const { return F.characteristic(); }
  KPoly one() const { return KPoly::constant(RatFunc::constant(F, 1)); }
  Value lift(const RatFunc& c) const { return {KPoly::constant(c), one()}; }
  Value number(long long v) const { return lift(RatFunc::constant(F, F.from_int(v))); }
  std::optional<Value> symbol(std::string_view name) const {
    if (name == "z") return Value{KPoly::z(F), one()};
    if (auto v = TSem{F}.symbol(name)) return lift(*v);
    return std::nullopt;
  }
  Value add(const Value& a, const Value& b) const {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  Value sub(const Value& a, const Value& b) const {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  Value mul(const Value& a, const Value& b) const { return {a.num * b.num, a.den * b.den}; }
  Value div(const Value& a, const Value& b) const {
    if (b.num.is_zero()) throw DomainError("division by zero in map expression");
    return {a.num * b.den, a.den * b.num};
  }
  Value neg(const Value& a) const { return {-a.num, a.den}; }
  Value pow(const Value& a, long e) const {
    return {ffdyn::pow(a.num, static_cast<unsigned>(e)), ffdyn::pow(a.den, static_cast<unsigned>(e))};
  }
};

}  // namespace

std::string format_elem(const GaloisField& F, Elem a) {
  if (F.degree() == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto d = F.digits(a);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(d[i]);
    } else {
      if (d[i] != 1) out += std::to_string(d[i]) + "*";
      out += monomial('g', i);
    }
  }
  return out;
}

std::string format_poly(const Poly& p, char var) {
  if (p.is_zero()) return "0";
  const GaloisField& F = p.field();
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    Elem c = p.coeffs()[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += format_elem(F, c);
    } else if (c == 1) {
      out += monomial(var, k);
    } else if (single_term(F, c)) {
      out += format_elem(F, c) + "*" + monomial(var, k);
    } else {
      out += "(" + format_elem(F, c) + ")*" + monomial(var, k);
    }
  }
  return out;
}

std::string format_ratfunc(const RatFunc& r) {
  if (r.is_polynomial()) return format_poly(r.num());
  return "(" + format_poly(r.num()) + ")/(" + format_poly(r.den()) + ")";
}

std::string format_zpoly(const std::vector<Poly>& coeffs) {
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Poly& c = coeffs[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += format_poly(c);
    } else if (c.is_one()) {
      out += monomial('z', k);
    } else {
      int terms = 0;
      for (auto x : c.coeffs()) terms += x != 0;
      if (terms == 1 && (c.degree() > 0 || single_term(c.field(), c.coeff(0))))
        out += format_poly(c) + "*" + monomial('z', k);
      else
        out += "(" + format_poly(c) + ")*" + monomial('z', k);
    }
  }
  return out.empty() ? "0" : out;
}

RatFunc parse_ratfunc(const GaloisField& F, std::string_view text) {
  TSem sem{F};
  return Parser<TSem>(sem, text).parse();
}

Poly parse_poly(const GaloisField& F, std::string_view text) {
  RatFunc r = parse_ratfunc(F, text);
  if (!r.is_polynomial()) throw ValidationError("expected a polynomial, got '" + std::string(text) + "'");
  return r.num();
}

Elem parse_elem(const GaloisField& F, std::string_view text) {
  RatFunc r = parse_ratfunc(F, text);
  if (!r.is_constant()) throw ValidationError("expected a constant, got '" + std::string(text) + "'");
  return r.num().coeff(0);
}

KFrac parse_zexpr(const GaloisField& F, std::string_view text) {
  ZSem sem{F};
  return Parser<ZSem>(sem, text).parse();
}

}  // namespace ffdyn
