#include "ffdyn/json_io.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/text.hpp"

namespace ffdyn {

namespace {

std::string as_text(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ValidationError(what + " must be a string");
}

long long as_integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ValidationError(what + " must be an integer");
  return j.get<long long>();
}

void require_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + " must be a JSON object");
}

}  // namespace

const GaloisField& field_from_json(const json& j) {
  require_object(j, "field");
  if (!j.contains("p")) throw ValidationError("field needs \"p\"");
  long long p = as_integer(j["p"], "field.p");
  long long m = j.contains("m") ? as_integer(j["m"], "field.m") : 1;
  if (p < 2 || m < 1 || p > (1LL << 31) || m > 64) throw ValidationError("field descriptor out of range");
  return GaloisField::get(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
}

json field_to_json(const GaloisField& F) { return {{"p", F.characteristic()}, {"m", F.degree()}}; }

ProjPoint point_from_json(const GaloisField& F, const json& j) {
  if (j.is_string()) return parse_point(F, j.get<std::string>());
  if (j.is_array() && (j.size() == 2 || j.size() == 3)) {
    unsigned ext = j.size() == 3 ? static_cast<unsigned>(as_integer(j[2], "point extension")) : 1;
    if (ext < 1) throw ValidationError("point extension must be >= 1");
    const GaloisField& G = ext == 1 ? F : GaloisField::get(F.characteristic(), F.degree() * ext);
    RatFunc a = parse_ratfunc(G, as_text(j[0], "point coordinate"));
    RatFunc b = parse_ratfunc(G, as_text(j[1], "point coordinate"));
    return ProjPoint::from_coords(a, b, ext);
  }
  throw ValidationError("point must be \"[a : b]\" or [\"a\", \"b\", m]");
}

json point_to_json(const ProjPoint& x) {
  return json::array({format_poly(x.a()), format_poly(x.b()), x.extension()});
}

EllipticCurve curve_from_json(const GaloisField& F, const json& j) {
  if (j.is_string()) return parse_curve(F, j.get<std::string>());
  require_object(j, "curve");
  static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  std::array<RatFunc, 5> a;
  for (int i = 0; i < 5; ++i) {
    if (j.contains(names[i]))
      a[i] = parse_ratfunc(F, as_text(j[names[i]], std::string("curve.") + names[i]));
    else
      a[i] = RatFunc(F);
  }
  for (const auto& [key, value] : j.items())
    if (key != "a1" && key != "a2" && key != "a3" && key != "a4" && key != "a6" && key != "field")
      throw ValidationError("unknown curve key '" + key + "'");
  return EllipticCurve(F, a);
}

json curve_to_json(const EllipticCurve& E) {
  static const char* names[5] = {"a1", "a2", "a3", "a4", "a6"};
  json j;
  for (int i = 0; i < 5; ++i) j[names[i]] = format_ratfunc(E.coefficients()[i]);
  return j;
}

EPoint epoint_from_json(const GaloisField& F, const json& j) {
  if (j.is_string()) return parse_epoint(F, j.get<std::string>());
  require_object(j, "point");
  if (!j.contains("x") || !j.contains("y")) throw ValidationError("point needs \"x\" and \"y\"");
  return EPoint::affine(parse_ratfunc(F, as_text(j["x"], "point.x")), parse_ratfunc(F, as_text(j["y"], "point.y")));
}

json epoint_to_json(const EPoint& P) {
  if (P.infinity) return "O";
  return {{"x", format_ratfunc(P.x)}, {"y", format_ratfunc(P.y)}};
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ValidationError("rational must be an integer or an \"a/b\" string");
}

json rational_to_json(const Rational& r) { return to_string(r); }

std::string normalize_place(const GaloisField& F, std::string_view label) {
  return format_place(parse_place(F, label));
}

FiberConfig fiber_from_json(const GaloisField& F, const json& j) {
  require_object(j, "fiber");
  std::string place = j.contains("place") ? normalize_place(F, as_text(j["place"], "fiber.place")) : "";
  FiberConfig cfg;
  if (j.contains("type")) {
    if (j.contains("matrix")) throw ValidationError("fiber at " + place + ": give either \"type\" or \"matrix\"");
    cfg = kodaira_template(KodairaType::parse(as_text(j["type"], "fiber.type")), place);
  } else if (j.contains("matrix")) {
    cfg.place = place;
    const json& M = j["matrix"];
    if (!M.is_array()) throw ValidationError("fiber.matrix must be an array of rows");
    for (const auto& row : M) {
      if (!row.is_array()) throw ValidationError("fiber.matrix must be an array of rows");
      std::vector<long long> r;
      for (const auto& e : row) r.push_back(as_integer(e, "fiber.matrix entry"));
      cfg.matrix.push_back(std::move(r));
    }
    if (j.contains("mult")) {
      for (const auto& e : j["mult"]) cfg.mult.push_back(as_integer(e, "fiber.mult entry"));
    } else {
      cfg.mult.assign(cfg.matrix.size(), 1);
    }
    if (j.contains("identity")) cfg.identity = static_cast<std::size_t>(as_integer(j["identity"], "fiber.identity"));
  } else {
    throw ValidationError("fiber needs \"type\" or \"matrix\"");
  }
  if (!place.empty()) cfg.place_degree = parse_place(F, place).degree();
  return cfg;
}

json fiber_to_json(const FiberConfig& cfg) {
  json j{{"place", cfg.place}, {"matrix", cfg.matrix}, {"mult", cfg.mult}, {"identity", cfg.identity}};
  if (cfg.type) j["type"] = cfg.type->name();
  return j;
}

Model model_from_json(const json& j, const GaloisField* field) {
  require_object(j, "model");
  Model model;
  model.field = field ? field : (j.contains("field") ? &field_from_json(j["field"]) : nullptr);
  if (!model.field) throw ValidationError("model needs a \"field\" descriptor");
  const GaloisField& F = *model.field;
  std::string kind = j.contains("model") ? as_text(j["model"], "model") : "abstract";
  if (kind == "trivial")
    model.kind = ModelKind::Trivial;
  else if (kind == "abstract")
    model.kind = ModelKind::Abstract;
  else
    throw ValidationError("model must be \"trivial\" or \"abstract\"");
  if (j.contains("curve")) model.curve = curve_from_json(F, j["curve"]);
  if (j.contains("fibers"))
    for (const auto& f : j["fibers"]) {
      model.fibers.push_back(fiber_from_json(F, f));
      if (model.fibers.back().place.empty()) throw ValidationError("model fibers need a \"place\"");
    }
  for (std::size_t a = 0; a < model.fibers.size(); ++a)
    for (std::size_t b = a + 1; b < model.fibers.size(); ++b)
      if (model.fibers[a].place == model.fibers[b].place)
        throw ValidationError("fiber at place " + model.fibers[a].place + " declared twice");
  if (!j.contains("sections") || !j["sections"].is_array()) throw ValidationError("model needs a \"sections\" array");
  for (const auto& s : j["sections"]) {
    require_object(s, "section");
    Section sec;
    if (!s.contains("name")) throw ValidationError("section needs a \"name\"");
    sec.name = as_text(s["name"], "section.name");
    if (s.contains("point")) {
      if (model.kind == ModelKind::Trivial)
        sec.point = point_from_json(F, s["point"]);
      else
        sec.epoint = epoint_from_json(F, s["point"]);
      if (sec.epoint && model.curve) require_on_curve(*model.curve, *sec.epoint);
    }
    if (s.contains("self")) sec.self = rational_from_json(s["self"]);
    if (s.contains("incidence")) {
      require_object(s["incidence"], "section.incidence");
      for (const auto& [place, comp] : s["incidence"].items())
        sec.incidence[normalize_place(F, place)] = static_cast<std::size_t>(as_integer(comp, "incidence component"));
    }
    if (s.contains("local_cross")) {
      require_object(s["local_cross"], "section.local_cross");
      for (const auto& [other, places] : s["local_cross"].items()) {
        require_object(places, "section.local_cross entry");
        auto& target = sec.local_cross[other];
        for (const auto& [place, n] : places.items())
          target[normalize_place(F, place)] = as_integer(n, "local intersection number");
      }
    }
    model.sections.push_back(std::move(sec));
  }
  for (const auto& s : model.sections)
    for (const auto& [other, places] : s.local_cross) (void)model.section(other);
  model.validate();
  return model;
}

ModelDivisor divisor_from_json(const Model& model, const json& j) {
  require_object(j, "divisor");
  ModelDivisor D;
  if (j.contains("horizontal")) {
    require_object(j["horizontal"], "divisor.horizontal");
    for (const auto& [name, n] : j["horizontal"].items()) {
      (void)model.section(name);
      D.horizontal[name] += rational_from_json(n);
    }
  }
  if (j.contains("vertical")) {
    require_object(j["vertical"], "divisor.vertical");
    for (const auto& [place, coeffs] : j["vertical"].items()) {
      std::string label = normalize_place(*model.field, place);
      std::vector<Rational> c;
      if (!coeffs.is_array()) throw ValidationError("vertical coefficients at " + label + " must be an array");
      for (const auto& e : coeffs) c.push_back(rational_from_json(e));
      const FiberConfig* f = model.fiber(label);
      std::size_t n = f ? f->size() : 1;
      if (c.size() != n)
        throw ValidationError("vertical part at place " + label + " has " + std::to_string(c.size()) +
                              " coefficients, fiber has " + std::to_string(n) + " components");
      D.vertical[label] = std::move(c);
    }
  }
  return D;
}

json divisor_to_json(const ModelDivisor& D) {
  json h = json::object(), v = json::object();
  for (const auto& [name, n] : D.horizontal) h[name] = rational_to_json(n);
  for (const auto& [place, c] : D.vertical) {
    json arr = json::array();
    for (const auto& e : c) arr.push_back(rational_to_json(e));
    v[place] = arr;
  }
  return {{"horizontal", h}, {"vertical", v}};
}

}  // namespace ffdyn
