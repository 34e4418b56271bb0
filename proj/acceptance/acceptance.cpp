// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "ffdyn/elliptic.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/json_io.hpp"
#include "ffdyn/kernels.hpp"
#include "ffdyn/lattice.hpp"
#include "ffdyn/rigidity.hpp"
#include "ffdyn/text.hpp"
#include "oracles.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ffdyn;

namespace {

constexpr std::uint64_t kSeed = 20240521;
const Rational kEps(1, 1000);

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; detail keeps the first few witnesses.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::ostringstream witness;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) witness << (failures > 1 ? "; " : "") << what;
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream s;
    s << summary << ", " << checks << " checks";
    if (failures) s << ", " << failures << " failed: " << witness.str();
    return {failures == 0, s.str()};
  }
};

RationalMap map(const GaloisField& F, const char* s) { return RationalMap::parse(F, s); }

Model fixture(const std::string& name) {
  std::ifstream in(std::string(FFDYN_FIXTURE_DIR) + "/" + name);
  if (!in) throw ValidationError("missing fixture " + name);
  return model_from_json(json::parse(in));
}

RatFunc random_ratfunc(const GaloisField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 8);
  std::uniform_int_distribution<std::uint32_t> el(0, F.order() - 1);
  auto poly = [&] {
    for (;;) {
      std::vector<GaloisField::Elem> c(deg(rng) + 1);
      for (auto& x : c) x = el(rng);
      Poly p(F, c);
      if (!p.is_zero()) return p;
    }
  };
  return RatFunc(poly(), poly());
}

// 1. Sum of deg(v) ord_v(a) vanishes.
Outcome product_formula() {
  Tally t;
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const GaloisField& F = GaloisField::with_order(q);
    std::mt19937_64 rng(kSeed + q);
    for (int i = 0; i < 1000; ++i) {
      RatFunc a = random_ratfunc(F, rng);
      t.expect(product_formula_defect(a, kSeed) == 0, "q=" + std::to_string(q) + " a=" + format_ratfunc(a));
    }
  }
  return t.outcome("1000 elements per q in {2,3,4,5}, exact");
}

// 2. local_heights total equals height.
Outcome height_decomposition() {
  Tally t;
  std::size_t k = 0;
  for (unsigned q : {2u, 3u, 5u})
    for (unsigned m : {1u, 2u, 3u}) {
      std::size_t n = k++ < 1 ? 112 : 111;  // 1000 points over the nine fields
      for (const auto& x : random_points(GaloisField::with_order(q), m, 4, n, kSeed + 10 * q + m)) {
        auto prof = local_heights(x, kSeed);
        t.expect(prof.total == x.height(), format_point(x));
      }
    }
  return t.outcome("1000 random points, q in {2,3,5}, m <= 3, exact");
}

// 3. |h(f x) - d h(x)| <= (d + 1) eps.
Outcome functional_equation() {
  Tally t;
  const GaloisField& F = GaloisField::get(3, 1);
  Rational worst = 0;
  for (const char* s : {"z^2", "z^3", "z^2+t", "z^2+1", "(z^2+t)/(z)"}) {
    RationalMap f = map(F, s);
    const Rational d(static_cast<long long>(f.degree()));
    auto pts = random_points(F, 1, 3, 100, kSeed + f.degree());
    std::vector<ProjPoint> images;
    for (const auto& x : pts) images.push_back(evaluate(f, x));
    auto hx = kernels::canonical_heights_parallel(f, pts, {kEps});
    auto hfx = kernels::canonical_heights_parallel(f, images, {kEps});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Rational gap = abs(hfx[i].value - d * hx[i].value);
      worst = std::max(worst, gap);
      t.expect(gap <= (d + 1) * kEps, std::string(s) + " at " + format_point(pts[i]));
    }
  }
  return t.outcome("5 maps x 100 points over F_3(t), eps = 1/1000, tolerance (d+1) eps, worst gap " + to_string(worst));
}

// 4. Monomials: canonical height equals naive height.
Outcome monomial_exactness() {
  Tally t;
  for (unsigned q : {2u, 4u}) {
    const GaloisField& F = GaloisField::with_order(q);
    auto pts = enumerate_points(F, 1, 3);
    for (const char* s : {"z^2", "z^3"}) {
      auto h = kernels::canonical_heights_parallel(map(F, s), pts, {kEps});
      for (std::size_t i = 0; i < pts.size(); ++i)
        t.expect(h[i].exact && h[i].value == pts[i].height(), std::string(s) + " at " + format_point(pts[i]));
    }
  }
  return t.outcome("z^2, z^3 on all height <= 3 points over F_2(t), F_4(t), exact");
}

// 5. is_preperiodic against bounded-orbit pruning.
Outcome preperiodicity_oracle() {
  Tally t;
  std::size_t points = 0, prep = 0;
  for (unsigned q : {2u, 4u}) {
    const GaloisField& F = GaloisField::with_order(q);
    auto pts = enumerate_points(F, 1, 2);
    for (const char* s : {"z^2", "z^3", "z^2+t", "z^2+1", "(z^2+t)/(z)"}) {
      RationalMap f = map(F, s);
      auto oracle_set = oracle::prep_by_pruning(f, 1, std::max<long long>(2, preperiodic_height_bound(f)));
      auto flags = kernels::preperiodic_flags_parallel(f, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bool expected = oracle_set.count(pts[i]) > 0;
        prep += expected;
        t.expect(bool(flags[i]) == expected, std::string(s) + " at " + format_point(pts[i]));
      }
      points += pts.size();
    }
  }
  return t.outcome(std::to_string(points) + " (map, point) pairs, " + std::to_string(prep) +
                   " preperiodic, zero disagreements required");
}

// 6. h_{z^2+t}([0:1]) = 1/2.
Outcome worked_value() {
  Tally t;
  const GaloisField& F = GaloisField::get(2, 1);
  RationalMap f = map(F, "z^2+t");
  ProjPoint x = parse_point(F, "[0 : 1]");
  Rational oracle_value = oracle::iterated_height_ratio(f, x, 12);
  t.expect(oracle_value == Rational(1, 2), "oracle gives " + to_string(oracle_value));
  auto h = canonical_height(f, x, {Rational(1, 100)});
  t.expect(abs(h.value - oracle_value) <= Rational(1, 100), "library gives " + to_string(h.value));
  t.expect(h.error_bound <= Rational(1, 100), "error bound " + to_string(h.error_bound));
  return t.outcome("oracle 1/2 exactly, library " + format_height_estimate(h) + ", tolerance 1/100");
}

// 7. Quadraticity, parallelogram law, a certified 3-torsion point.
Outcome neron_tate_laws() {
  Tally t;
  const GaloisField& F = GaloisField::get(5, 1);
  struct Case {
    const char* curve;
    const char* P;
    const char* Q;
  };
  Rational worst_q = 0, worst_p = 0;
  for (const Case& c : {Case{"[t^2+3, 1]", "(0, 1)", "(1, t)"},
                        Case{"[0, 1, 0, 0, t^6+4*t^5+4*t^4+4*t^3+4*t^2]", "(t, t^3+2*t^2)", "(t, t^3+2*t^2)"}}) {
    EllipticCurve E = parse_curve(F, c.curve);
    EPoint P = parse_epoint(F, c.P), Q = parse_epoint(F, c.Q);
    CanonicalHeightOptions opt{kEps};
    auto hP = nt_height(E, P, opt), hQ = nt_height(E, Q, opt);
    auto h2P = nt_height(E, dbl(E, P), opt);
    Rational quad = abs(h2P.value - 4 * hP.value);
    worst_q = std::max(worst_q, quad);
    t.expect(quad <= 5 * kEps, std::string("quadraticity on ") + c.curve);
    auto hsum = nt_height(E, add(E, P, Q), opt), hdiff = nt_height(E, sub(E, P, Q), opt);
    Rational para = abs(hsum.value + hdiff.value - 2 * hP.value - 2 * hQ.value);
    worst_p = std::max(worst_p, para);
    t.expect(para <= 6 * kEps, std::string("parallelogram on ") + c.curve);
  }
  EllipticCurve E = parse_curve(F, "[0, t^2]");
  EPoint T = parse_epoint(F, "(0, t)");
  t.expect(is_torsion(E, T), "(0, t) not certified torsion");
  t.expect(mul(E, 3, T).infinity, "3 (0, t) != O");
  auto hT = nt_height(E, T, {kEps});
  t.expect(hT.value <= kEps, "h(0, t) = " + to_string(hT.value));
  return t.outcome("2 curves over F_5(t), eps = 1/1000, worst quadraticity " + to_string(worst_q) +
                   " (tol 5 eps), worst parallelogram " + to_string(worst_p) + " (tol 6 eps), (0,t) torsion, h " +
                   format_height_estimate(hT));
}

// 8. Trace points are torsion; a non-isotrivial curve has a point of positive height.
Outcome pairing_kernel() {
  Tally t;
  const GaloisField& F = GaloisField::get(5, 1);
  EllipticCurve C = parse_curve(F, "[1, 0]");
  auto consts = constant_points(C, 1);
  for (const auto& P : consts) t.expect(is_torsion(C, P), format_epoint(P) + " not torsion");
  auto report = trace_kernel_check(C, consts, {kEps});
  t.expect(report.pass, "trace kernel check: " + report.message);

  EllipticCurve E = parse_curve(F, "[t^2+3, 1]");
  t.expect(!E.isotrivial(), "curated curve is isotrivial");
  std::optional<EPoint> witness;
  for (const auto& P : search_points(E, 1, 1))
    if (!is_torsion(E, P)) {
      witness = P;
      break;
    }
  t.expect(witness.has_value(), "search found no non-torsion point");
  std::string h = "-";
  if (witness) {
    auto est = nt_height(E, *witness, {kEps});
    h = format_epoint(*witness) + " h = " + format_height_estimate(est);
    t.expect(est.value > est.error_bound, "height not above its error bound");
  }
  return t.outcome(std::to_string(consts.size()) + " points of y^2 = x^3 + x over F_5 torsion; searched " + h);
}

// 9. Local Hodge index on every Kodaira template.
Outcome local_hodge() {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  std::vector<KodairaType> types;
  for (int n = 0; n <= 9; ++n) types.push_back({KodairaKind::I, n});
  for (int n = 0; n <= 4; ++n) types.push_back({KodairaKind::IStar, n});
  for (auto k : {KodairaKind::II, KodairaKind::III, KodairaKind::IV, KodairaKind::IVStar, KodairaKind::IIIStar,
                 KodairaKind::IIStar})
    types.push_back({k, 0});
  for (auto type : types) {
    auto r = check_local_hodge(kodaira_template(type));
    t.expect(r.pass && r.semidefinite && r.kernel_matches, type.name() + ": " + r.witness);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  std::ostringstream s;
  s << types.size() << " templates (I0-I9, I0*-I4*, II, III, IV, IV*, III*, II*) in " << secs << " s, limit 1 s";
  return t.outcome(s.str());
}

// 10. Faltings-Hriljac: trivial Jacobian on P^1, curated elliptic fixtures.
Outcome faltings_hriljac() {
  Tally t;
  const GaloisField& F = GaloisField::get(5, 1);
  Model trivial;
  trivial.field = &F;
  trivial.kind = ModelKind::Trivial;
  auto pts = random_points(F, 1, 3, 10, kSeed);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Section s;
    s.name = "s" + std::to_string(i);
    s.point = pts[i];
    bool dup = false;
    for (const auto& o : trivial.sections) dup = dup || *o.point == pts[i];
    if (!dup) trivial.sections.push_back(s);
  }
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < 50; ++k) {
    ModelDivisor D;
    int total = 0;
    for (std::size_t i = 1; i < trivial.sections.size(); ++i) {
      int c = coef(rng);
      D.horizontal[trivial.sections[i].name] = c;
      total += c;
    }
    D.horizontal[trivial.sections[0].name] = -total;
    Rational p = model_pairing(trivial, D, D);
    t.expect(p == 0, "trivial-model pairing " + to_string(p));
  }
  Model legendre = fixture("legendre_torsion.json");
  for (const char* s : {"T1", "T2", "T3"}) {
    ModelDivisor D{{{s, Rational(1)}, {"O", Rational(-1)}}, {}};
    auto r = faltings_hriljac_check(legendre, D, {kEps});
    t.expect(r.pass && r.pairing == 0 && r.hx.value == 0, std::string("torsion ") + s);
  }
  Model one = fixture("elliptic_one_i2.json");
  ModelDivisor D{{{"P", Rational(1)}, {"O", Rational(-1)}}, {}};
  auto r = faltings_hriljac_check(one, D, {kEps});
  t.expect(r.pass, "non-torsion: pairing " + to_string(r.pairing) + " vs " + to_string(r.expected));
  std::ostringstream s;
  s << "50 trivial-model divisors exactly 0; Legendre 2-torsion exactly 0; P - O on the I2 fixture: pairing "
    << to_string(r.pairing) << ", -h_x = " << to_string(r.expected) << ", |diff| " << to_string(abs(r.difference))
    << " <= 2 * " << to_string(r.bound);
  return t.outcome(s.str());
}

// 11. Prep(z^2) = Prep(z^3); Prep(z^2) and Prep(z^2+t) meet only at infinity.
Outcome rigidity_scan() {
  Tally t;
  const GaloisField& F4 = GaloisField::get(2, 2);
  RationalMap f = map(F4, "z^2"), g = map(F4, "z^3"), h = map(F4, "z^2+t");
  std::size_t scanned = 0;
  for (unsigned m : {1u, 2u})
    for (long long H : {0LL, 1LL, 2LL}) {
      std::string tag = "m=" + std::to_string(m) + " H=" + std::to_string(H);
      auto same = common_prep_scan(f, g, m, H);
      scanned += same.scanned;
      t.expect(same.agree && same.verified, "z^2 vs z^3 " + tag);
      auto diff = common_prep_scan(f, h, m, H);
      t.expect(diff.common.size() == 1 && diff.common[0].is_infinity() && diff.verified, "z^2 vs z^2+t " + tag);
      const std::string ref_same = to_json(common_prep_scan_serial(f, g, m, H)).dump();
      const std::string ref_diff = to_json(common_prep_scan_serial(f, h, m, H)).dump();
      for (int threads : {1, 2, 4, 8}) {
        ScanOptions opt;
        opt.threads = threads;
        t.expect(to_json(common_prep_scan(f, g, m, H, opt)).dump() == ref_same, tag + " threads " + std::to_string(threads));
        t.expect(to_json(common_prep_scan(f, h, m, H, opt)).dump() == ref_diff, tag + " threads " + std::to_string(threads));
      }
    }
  return t.outcome("F_4(t), m <= 2, H <= 2, " + std::to_string(scanned) +
                   " points per map pair; reports identical to the serial scan for 1, 2, 4, 8 threads");
}

// 12. O(d) canonical height equals d times the O(1) height.
Outcome polarization() {
  Tally t;
  Rational worst = 0;
  struct Case {
    unsigned q;
    const char* f;
  };
  for (const Case& c : {Case{2, "z^2+t"}, Case{3, "(z^2+t)/(z)"}}) {
    const GaloisField& F = GaloisField::with_order(c.q);
    auto sample = random_points(F, 1, 2, 100, kSeed + c.q);
    for (unsigned d : {2u, 3u}) {
      auto r = polarization_independence_check(map(F, c.f), d, sample, {kEps});
      for (const auto& e : r.entries) {
        worst = std::max(worst, abs(e.difference));
        t.expect(abs(e.difference) <= Rational(d + 1) * kEps, std::string(c.f) + " at " + format_point(e.point));
      }
      t.expect(r.pass, std::string(c.f) + " d=" + std::to_string(d) + " report fails");
    }
  }
  return t.outcome("2 maps x 100 samples x d in {2,3}, tolerance (d+1) eps, worst " + to_string(worst));
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"product formula", product_formula},
      {"height decomposition", height_decomposition},
      {"canonical-height functional equation", functional_equation},
      {"monomial exactness", monomial_exactness},
      {"preperiodicity oracle equivalence", preperiodicity_oracle},
      {"worked value h_{z^2+t}([0:1]) = 1/2", worked_value},
      {"Neron-Tate laws", neron_tate_laws},
      {"kernel of the pairing", pairing_kernel},
      {"local Hodge index", local_hodge},
      {"Faltings-Hriljac", faltings_hriljac},
      {"rigidity scan", rigidity_scan},
      {"polarization independence", polarization},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
