#include "ffdyn/elliptic.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/json_io.hpp"
#include "ffdyn/kernels.hpp"
#include "ffdyn/lattice.hpp"
#include "ffdyn/rigidity.hpp"
#include "ffdyn/table.hpp"
#include "ffdyn/text.hpp"
#include "schemas.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace ffdyn;

namespace {

constexpr int kExitUsage = 64;

struct RunConfig {
  std::string field = "F2";
  std::string eps = "1/1000";
  std::uint64_t iteration_cap = kDefaultIterationCap;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  int threads = 0;

  const GaloisField* field_ptr = nullptr;
  Rational eps_value;

  CanonicalHeightOptions heights(unsigned polarization = 1) const {
    CanonicalHeightOptions o;
    o.eps = eps_value;
    o.iteration_cap = iteration_cap;
    o.polarization = polarization;
    return o;
  }

  json to_json() const {
    json j{{"eps", rational_to_json(eps_value)},
           {"iteration_cap", iteration_cap},
           {"enumeration_cap", enumeration_cap},
           {"seed", seed},
           {"threads", threads}};
    j["field"] = field_ptr ? field_to_json(*field_ptr) : json(nullptr);
    return j;
  }
};

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  errno = 0;
  unsigned long long x = std::strtoull(v, &end, 10);
  if (errno || *end || x == 0 || v[0] == '-')
    throw ValidationError(std::string(name) + " must be a positive integer, got '" + v + "'");
  return x;
}

/// "F4", "GF(4)", "4", "2^2".
const GaloisField& parse_field(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.rfind("GF(", 0) == 0 && s.size() > 4 && s.back() == ')') s = s.substr(3, s.size() - 4);
  else if (!s.empty() && (s[0] == 'F' || s[0] == 'f')) s = s.substr(1);
  auto number = [&](const std::string& t) {
    if (t.empty() || t.size() > 12 || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(c); }))
      throw ValidationError("field must look like F4, GF(4), 4 or 2^2, got '" + text + "'");
    return std::stoull(t);
  };
  if (auto caret = s.find('^'); caret != std::string::npos) {
    auto p = number(s.substr(0, caret)), m = number(s.substr(caret + 1));
    if (p > (1ULL << 31) || m > 64) throw ResourceError("field " + text + " is too large");
    return GaloisField::get(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
  }
  return GaloisField::with_order(number(s));
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw ValidationError("cannot open input file '" + arg + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

json estimate_json(const HeightEstimate& h) {
  return {{"value", rational_to_json(h.value)},
          {"error_bound", rational_to_json(h.error_bound)},
          {"exact", h.exact},
          {"iterations", h.iterations}};
}

json points_json(const std::vector<ProjPoint>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(format_point(x));
  return arr;
}

json profile_json(const LocalHeightProfile& p) {
  json terms = json::array();
  for (const auto& t : p.terms)
    terms.push_back({{"place", format_place(t.place)}, {"degree", t.place.degree()}, {"value", rational_to_json(t.value)}});
  return {{"terms", terms}, {"total", rational_to_json(p.total)}};
}

json vector_json(const std::vector<Rational>& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(rational_to_json(x));
  return arr;
}

json hodge_json(const FiberConfig& cfg, const LocalHodgeReport& r) {
  json kernel = json::array();
  for (const auto& v : r.kernel) kernel.push_back(vector_json(v));
  return {{"fiber", fiber_to_json(cfg)},
          {"pass", r.pass},
          {"fiber_trivial", r.fiber_trivial},
          {"semidefinite", r.semidefinite},
          {"kernel_matches", r.kernel_matches},
          {"pivots", vector_json(r.pivots)},
          {"kernel", kernel},
          {"witness", r.witness}};
}

struct Inputs {
  std::string map, map2, point, curve, type, fiber, model, divisor, divisor2, shift = "0";
  std::vector<std::string> points;
  unsigned ext = 1, polarization = 1, degree = 2;
  long long height = 1;
  std::size_t sample = 0;
  long long sample_height = 2;
  std::uint64_t threshold = 0;
};

class Cli {
 public:
  Cli() : app_("ffdyn: heights, canonical heights and intersection pairings over F_q(t)") {
    app_.require_subcommand(0, 1);
    app_.fallthrough();
    app_.add_option("--field", cfg_.field, "constant field: F4, GF(4), 4 or 2^2")->capture_default_str();
    app_.add_option("--eps", cfg_.eps, "target accuracy as a rational")->capture_default_str();
    app_.add_option("--iter-cap", cfg_.iteration_cap, "iteration cap (env FFDYN_ITER_CAP)")->check(CLI::PositiveNumber);
    app_.add_option("--enum-cap", cfg_.enumeration_cap, "enumeration cap (env FFDYN_ENUM_CAP)")->check(CLI::PositiveNumber);
    app_.add_option("--seed", cfg_.seed, "PRNG seed for randomized internals")->capture_default_str();
    app_.add_option("--format", cfg_.format, "output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app_.add_option("--threads", cfg_.threads, "worker threads, 0 = OpenMP default (env FFDYN_THREADS)")
        ->check(CLI::NonNegativeNumber);
    app_.add_option("--emit-schema", schema_, "print all JSON schemas, or one with --emit-schema=NAME")->expected(0, 1)
        ->default_str("all");
    define_commands();
  }

  int run(int argc, char** argv) {
    try {
      cfg_.iteration_cap = env_u64("FFDYN_ITER_CAP", cfg_.iteration_cap);
      cfg_.enumeration_cap = env_u64("FFDYN_ENUM_CAP", cfg_.enumeration_cap);
      cfg_.threads = static_cast<int>(env_u64("FFDYN_THREADS", 0));
    } catch (const ValidationError& e) {
      return fail("validation", e.what(), 1);
    }
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e);
    } catch (const CLI::ParseError& e) {
      app_.exit(e);
      return kExitUsage;
    }
    if (app_.count("--emit-schema")) return emit_schema();
    if (!selected_) {
      std::cerr << app_.help();
      return kExitUsage;
    }
    try {
      cfg_.field_ptr = &parse_field(cfg_.field);
      cfg_.eps_value = parse_rational(cfg_.eps);
      if (cfg_.eps_value <= 0) throw DomainError("eps must be positive");
      json result = handler_();
      json out{{"command", command_}, {"config", cfg_.to_json()}, {"result", result}};
      if (cfg_.format == "json")
        std::cout << out.dump(2) << '\n';
      else
        std::cout << json_to_table(out);
      return 0;
    } catch (const ResourceError& e) {
      return fail("resource", e.what(), 2);
    } catch (const DomainError& e) {
      return fail("domain", e.what(), 1);
    } catch (const ValidationError& e) {
      return fail("validation", e.what(), 1);
    } catch (const UnsupportedError& e) {
      return fail("unsupported", e.what(), 1);
    }
  }

 private:
  int fail(const std::string& kind, const std::string& message, int code) {
    if (cfg_.format == "json") {
      json err{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}},
               {"command", command_},
               {"seed", cfg_.seed}};
      std::cerr << err.dump() << '\n';
    } else {
      std::cerr << "error (" << kind << "): " << message << '\n';
    }
    return code;
  }

  int emit_schema() {
    const auto& all = schema_texts();
    if (schema_.empty() || schema_ == "all") {
      json j = json::object();
      for (const auto& [name, text] : all) j[name] = json::parse(text);
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    auto it = all.find(schema_);
    if (it == all.end()) {
      std::cerr << "unknown schema '" << schema_ << "'; available:";
      for (const auto& [name, text] : all) std::cerr << ' ' << name;
      std::cerr << '\n';
      return kExitUsage;
    }
    std::cout << json::parse(it->second).dump(2) << '\n';
    return 0;
  }

  CLI::App* command(const std::string& name, const std::string& help, std::function<json()> fn) {
    CLI::App* sub = app_.add_subcommand(name, help);
    sub->callback([this, name, fn] {
      selected_ = true;
      command_ = name;
      handler_ = fn;
    });
    return sub;
  }

  const GaloisField& F() const { return *cfg_.field_ptr; }
  const GaloisField& point_field() const { return extension_field(F(), in_.ext); }
  ProjPoint point() const { return parse_point(point_field(), in_.point, in_.ext); }
  RationalMap map(const std::string& s) const { return RationalMap::parse(F(), s); }
  EllipticCurve curve() const { return parse_curve(F(), in_.curve); }
  EPoint epoint(const EllipticCurve& E, const std::string& s) const {
    EPoint P = parse_epoint(point_field(), s, in_.ext);
    auto Ex = in_.ext == 1 ? E : E.over(point_field());
    require_on_curve(Ex, P);
    return P;
  }
  EllipticCurve curve_for_points(const EllipticCurve& E) const { return in_.ext == 1 ? E : E.over(point_field()); }

  Model model() const {
    json j = read_json_arg(in_.model);
    if (j.contains("field")) {
      const GaloisField& G = field_from_json(j["field"]);
      if (app_.get_option("--field")->count() && &G != &F())
        throw ValidationError("--field disagrees with the model's field");
      return model_from_json(j, &G);
    }
    return model_from_json(j, &F());
  }

  void define_commands() {
    auto* c = command("height", "naive height of a point of P^1", [this] {
      ProjPoint x = point();
      return json{{"point", format_point(x)}, {"extension", in_.ext}, {"height", x.height()}};
    });
    add_point_options(c);
    c->get_option("--point")->required();

    c = command("local-heights", "local height decomposition of a point", [this] {
      ProjPoint x = point();
      json j = profile_json(local_heights(x, cfg_.seed));
      j["point"] = format_point(x);
      j["height"] = x.height();
      return j;
    });
    add_point_options(c);
    c->get_option("--point")->required();

    c = command("canheight", "canonical height for a rational map", [this] {
      RationalMap f = map(in_.map).over(point_field());
      ProjPoint x = point();
      json j{{"map", f.to_string()}, {"point", format_point(x)}, {"polarization", in_.polarization},
             {"gap_constant", rational_to_json(gap_constant(f))}};
      j["height"] = estimate_json(canonical_height(f, x, cfg_.heights(in_.polarization)));
      return j;
    });
    add_map_option(c);
    add_point_options(c);
    c->get_option("--point")->required();
    c->add_option("--polarization", in_.polarization, "O(d) polarization")->check(CLI::PositiveNumber);

    c = command("prep", "decide whether a point is preperiodic", [this] {
      RationalMap f = map(in_.map).over(point_field());
      ProjPoint x = point();
      json j{{"map", f.to_string()}, {"point", format_point(x)}, {"height_bound", preperiodic_height_bound(f)}};
      bool prep = is_preperiodic(f, x);
      j["preperiodic"] = prep;
      if (prep) {
        std::map<ProjPoint, std::uint64_t> seen;
        std::vector<ProjPoint> orbit;
        ProjPoint y = x;
        while (!seen.count(y)) {
          seen[y] = orbit.size();
          orbit.push_back(y);
          y = evaluate(f, y);
        }
        j["preperiod"] = seen[y];
        j["period"] = orbit.size() - seen[y];
        j["orbit"] = points_json(orbit);
      }
      return j;
    });
    add_map_option(c);
    add_point_options(c);
    c->get_option("--point")->required();

    c = command("prep-scan", "all preperiodic points of bounded height", [this] {
      RationalMap f = map(in_.map);
      auto pts = kernels::prep_set_parallel(f, in_.ext, in_.height, cfg_.enumeration_cap, cfg_.threads);
      return json{{"map", f.to_string()},
                  {"m", in_.ext},
                  {"H", in_.height},
                  {"height_bound", preperiodic_height_bound(f)},
                  {"count", pts.size()},
                  {"points", points_json(pts)}};
    });
    add_map_option(c);
    add_scan_options(c);

    c = command("nt-height", "Neron-Tate height h_x of a point", [this] {
      EllipticCurve E = curve();
      EPoint P = epoint(E, in_.point);
      auto Ex = curve_for_points(E);
      return json{{"curve", E.to_string()},
                  {"point", format_epoint(P)},
                  {"gap_constant", rational_to_json(Ex.gap_constant())},
                  {"height", estimate_json(nt_height(Ex, P, cfg_.heights()))}};
    });
    add_curve_options(c);
    c->add_option("--point", in_.point, "point: O or (x, y)")->required();

    c = command("nt-pair", "Neron-Tate pairing of two points", [this] {
      if (in_.points.size() != 2) throw ValidationError("nt-pair needs exactly two --point values");
      EllipticCurve E = curve();
      EPoint P = epoint(E, in_.points[0]), Q = epoint(E, in_.points[1]);
      return json{{"curve", E.to_string()},
                  {"points", {format_epoint(P), format_epoint(Q)}},
                  {"pairing", estimate_json(nt_pairing(curve_for_points(E), P, Q, cfg_.heights()))}};
    });
    add_curve_options(c);
    c->add_option("--point", in_.points, "point: O or (x, y); give twice")->required()->allow_extra_args(false);

    c = command("torsion", "decide whether a point is torsion", [this] {
      EllipticCurve E = curve();
      EPoint P = epoint(E, in_.point);
      auto Ex = curve_for_points(E);
      bool t = is_torsion(Ex, P);
      json j{{"curve", E.to_string()}, {"point", format_epoint(P)}, {"torsion", t}};
      if (t) {
        std::uint64_t n = 1;
        EPoint Q = P;
        while (!Q.infinity && n < (1u << 20)) {
          Q = add(Ex, Q, P);
          ++n;
        }
        if (Q.infinity) j["order"] = n;
      }
      return j;
    });
    add_curve_options(c);
    c->add_option("--point", in_.point, "point: O or (x, y)")->required();

    c = command("gram", "Gram matrix of Neron-Tate pairings", [this] {
      EllipticCurve E = curve();
      std::vector<EPoint> P;
      json names = json::array();
      for (const auto& s : in_.points) {
        P.push_back(epoint(E, s));
        names.push_back(format_epoint(P.back()));
      }
      auto G = gram_matrix_parallel(curve_for_points(E), P, cfg_.heights(), cfg_.threads);
      json rows = json::array();
      for (const auto& r : G) {
        json row = json::array();
        for (const auto& e : r) row.push_back(estimate_json(e));
        rows.push_back(row);
      }
      return json{{"curve", E.to_string()}, {"points", names}, {"gram", rows}};
    });
    add_curve_options(c);
    c->add_option("--point", in_.points, "points: O or (x, y); repeat")->required()->allow_extra_args(false);

    c = command("fiber-check", "local Hodge index check of a fiber", [this] {
      FiberConfig cfg;
      if (!in_.type.empty() == !in_.fiber.empty()) throw ValidationError("give exactly one of --type and --fiber");
      if (!in_.type.empty())
        cfg = kodaira_template(KodairaType::parse(in_.type));
      else
        cfg = fiber_from_json(F(), read_json_arg(in_.fiber));
      return hodge_json(cfg, check_local_hodge(cfg));
    });
    c->add_option("--type", in_.type, "Kodaira type: I0, I3, II, III, IV, I2*, IV*, III*, II*");
    c->add_option("--fiber", in_.fiber, "fiber JSON (file or inline)");

    c = command("flatten", "flat vertical correction of a degree-0 divisor", [this] {
      Model m = model();
      ModelDivisor D = divisor_from_json(m, read_json_arg(in_.divisor));
      ModelDivisor flat = flat_correction(m, D, parse_rational(in_.shift));
      return json{{"divisor", divisor_to_json(D)},
                  {"generic_degree", rational_to_json(generic_degree(D))},
                  {"shift", rational_to_json(parse_rational(in_.shift))},
                  {"flat", divisor_to_json(flat)}};
    });
    add_model_options(c);
    c->add_option("--shift", in_.shift, "multiple of each full fiber added to the correction");

    c = command("pair", "model pairing of two degree-0 divisors", [this] {
      Model m = model();
      ModelDivisor D = divisor_from_json(m, read_json_arg(in_.divisor));
      ModelDivisor E = in_.divisor2.empty() ? D : divisor_from_json(m, read_json_arg(in_.divisor2));
      return json{{"divisor", divisor_to_json(D)},
                  {"divisor2", divisor_to_json(E)},
                  {"pairing", rational_to_json(model_pairing(m, D, E))}};
    });
    add_model_options(c);
    c->add_option("--divisor2", in_.divisor2, "second divisor JSON (defaults to the first)");

    c = command("fh-check", "Faltings-Hriljac cross-check", [this] {
      Model m = model();
      ModelDivisor D = divisor_from_json(m, read_json_arg(in_.divisor));
      auto r = faltings_hriljac_check(m, D, cfg_.heights());
      return json{{"divisor", divisor_to_json(D)},
                  {"class", r.class_point},
                  {"pairing", rational_to_json(r.pairing)},
                  {"h_x", estimate_json(r.hx)},
                  {"expected", rational_to_json(r.expected)},
                  {"difference", rational_to_json(r.difference)},
                  {"bound", rational_to_json(r.bound)},
                  {"pass", r.pass}};
    });
    add_model_options(c);

    c = command("rigidity", "compare the preperiodic sets of two maps", [this] {
      ScanOptions opt;
      opt.enumeration_cap = cfg_.enumeration_cap;
      opt.heights = cfg_.heights();
      opt.threshold = in_.threshold;
      opt.threads = cfg_.threads;
      RationalMap f = map(in_.map), g = map(in_.map2);
      json j = to_json(common_prep_scan(f, g, in_.ext, in_.height, opt));
      j["f"] = f.to_string();
      j["g"] = g.to_string();
      return j;
    });
    add_map_option(c);
    c->add_option("--map2", in_.map2, "second map")->required();
    add_scan_options(c);
    c->add_option("--threshold", in_.threshold, "common-set size signalling rigidity (0 = Q + 1)");

    c = command("polarization", "O(d) versus d * O(1) canonical heights", [this] {
      RationalMap f = map(in_.map);
      std::vector<ProjPoint> sample;
      for (const auto& s : in_.points) sample.push_back(parse_point(point_field(), s, in_.ext));
      if (in_.sample) {
        auto extra = random_points(F(), in_.ext, in_.sample_height, in_.sample, cfg_.seed);
        sample.insert(sample.end(), extra.begin(), extra.end());
      }
      if (sample.empty()) throw ValidationError("polarization needs --point or --sample");
      json j = to_json(polarization_independence_check(f.over(point_field()), in_.degree, sample, cfg_.heights(),
                                                       cfg_.threads));
      j["map"] = f.to_string();
      return j;
    });
    add_map_option(c);
    c->add_option("--degree", in_.degree, "polarization degree d")->check(CLI::PositiveNumber);
    c->add_option("--point", in_.points, "sample point; repeat")->allow_extra_args(false);
    c->add_option("--sample", in_.sample, "number of random sample points (seeded)");
    c->add_option("--sample-height", in_.sample_height, "height bound of random samples")->check(CLI::NonNegativeNumber);
    c->add_option("--ext", in_.ext, "constant-field extension degree m")->check(CLI::PositiveNumber);
  }

  void add_point_options(CLI::App* c) {
    c->add_option("--point", in_.point, "point literal [a : b]");
    c->add_option("--ext", in_.ext, "constant-field extension degree m of the point")->check(CLI::PositiveNumber);
  }
  void add_map_option(CLI::App* c) { c->add_option("--map", in_.map, "rational map in z, e.g. (z^2+t)/(z)")->required(); }
  void add_curve_options(CLI::App* c) {
    c->add_option("--curve", in_.curve, "[a1, a2, a3, a4, a6] or [a4, a6]")->required();
    c->add_option("--ext", in_.ext, "constant-field extension degree m of the points")->check(CLI::PositiveNumber);
  }
  void add_scan_options(CLI::App* c) {
    c->add_option("--ext", in_.ext, "constant-field extension degree m")->check(CLI::PositiveNumber);
    c->add_option("--height", in_.height, "height bound H")->required()->check(CLI::NonNegativeNumber);
  }
  void add_model_options(CLI::App* c) {
    c->add_option("--model", in_.model, "model JSON (file or inline)")->required();
    c->add_option("--divisor", in_.divisor, "divisor JSON (file or inline)")->required();
  }

  CLI::App app_;
  RunConfig cfg_;
  Inputs in_;
  std::string schema_;
  bool selected_ = false;
  std::string command_;
  std::function<json()> handler_;
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.run(argc, argv);
}
