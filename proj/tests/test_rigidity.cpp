#include "ffdyn/errors.hpp"
#include "ffdyn/rigidity.hpp"
#include "ffdyn/table.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace ffdyn;

namespace {

const GaloisField& F2() { return GaloisField::get(2, 1); }
const GaloisField& F3() { return GaloisField::get(3, 1); }
RationalMap map(const GaloisField& F, const char* s) { return RationalMap::parse(F, s); }
ProjPoint pt(const GaloisField& F, const char* s) { return parse_point(F, s); }

std::set<ProjPoint> as_set(const std::vector<ProjPoint>& xs) { return {xs.begin(), xs.end()}; }

// Prep sets from the pruning oracle, restricted to height <= H.
void check_against_oracle(const RationalMap& f, const RationalMap& g, unsigned m, long long H) {
  auto pf = oracle::prep_by_pruning(f, m, std::max(H, preperiodic_height_bound(f)));
  auto pg = oracle::prep_by_pruning(g, m, std::max(H, preperiodic_height_bound(g)));
  std::set<ProjPoint> common, only_f, only_g;
  for (const auto& x : enumerate_points(f.field(), m, H)) {
    bool a = pf.count(x) > 0, b = pg.count(x) > 0;
    if (a && b) common.insert(x);
    if (a && !b) only_f.insert(x);
    if (!a && b) only_g.insert(x);
  }
  auto r = common_prep_scan(f, g, m, H);
  CHECK(as_set(r.common) == common);
  CHECK(as_set(r.only_f) == only_f);
  CHECK(as_set(r.only_g) == only_g);
  CHECK(r.verified);
  CHECK(r.agree == (only_f.empty() && only_g.empty()));
}

}  // namespace

TEST_CASE("common prep scan examples") {
  const auto& F2 = ::F2();
  auto r = common_prep_scan(map(F2, "z^2"), map(F2, "z^3"), 2, 2);
  CHECK(r.common.size() == 5);
  for (const auto& x : r.common) CHECK(x.is_constant());
  CHECK(r.only_f.empty());
  CHECK(r.only_g.empty());
  CHECK(r.agree);
  CHECK_FALSE(r.common_nonconstant);
  CHECK(r.threshold == 5);
  CHECK_FALSE(r.common_exceeds_threshold);
  CHECK(r.scanned == 4 * 4 * 4 * 4 * 4 + 1);
  CHECK(to_json(r)["verdict"] == "agree-on-scan");

  auto s = common_prep_scan(map(F2, "z^2"), map(F2, "z^2+t"), 1, 2);
  REQUIRE(s.common.size() == 1);
  CHECK(s.common[0].is_infinity());
  CHECK_FALSE(s.agree);
  CHECK(s.only_f.size() == 2);  // [0:1], [1:1]
  CHECK(s.verified);

  auto f = map(F3(), "(z^2+t)/(z)");
  auto same = common_prep_scan(f, f, 1, 1);
  CHECK(same.agree);
  CHECK(same.only_f.empty());

  CHECK_THROWS_AS(common_prep_scan(map(F2, "z^2"), map(F3(), "z^2"), 1, 1), ValidationError);
  ScanOptions tiny;
  tiny.enumeration_cap = 10;
  CHECK_THROWS_AS(common_prep_scan(f, f, 1, 2, tiny), ResourceError);
}

TEST_CASE("common prep scan against the pruning oracle") {
  for (const char* a : {"z^2", "z^2+1", "z^2+t", "(z^2+t)/(z)"})
    for (const char* b : {"z^2", "z^3", "z^2+t^2"}) {
      std::string pair = std::string(a) + " vs " + b;
      CAPTURE(pair);
      auto f = map(F2(), a), g = map(F2(), b);
      check_against_oracle(f, g, 1, 2);
      // Keep the oracle's enumeration over F_4(t) small.
      if (std::max(preperiodic_height_bound(f), preperiodic_height_bound(g)) <= 2) check_against_oracle(f, g, 2, 1);
    }
}

TEST_CASE("scan is deterministic across thread counts") {
  auto f = map(GaloisField::get(2, 2), "z^2+t*z");
  auto g = map(GaloisField::get(2, 2), "z^2");
  auto ref = common_prep_scan_serial(f, g, 1, 2);
  for (int threads : {1, 2, 3, 8}) {
    ScanOptions opt;
    opt.threads = threads;
    auto r = common_prep_scan(f, g, 1, 2, opt);
    CHECK(r.common == ref.common);
    CHECK(r.only_f == ref.only_f);
    CHECK(r.only_g == ref.only_g);
    CHECK(to_json(r).dump() == to_json(ref).dump());
  }
}

TEST_CASE("common points have height zero for both maps") {
  auto f = map(F3(), "z^2"), g = map(F3(), "z^3+t*z^2+z");
  auto r = common_prep_scan(f, g, 1, 1);
  CHECK(r.verified);
  for (const auto& e : r.common_heights.entries) {
    CHECK(e.hf.value <= r.eps);
    CHECK(e.hg.value <= r.eps);
  }
}

TEST_CASE("height difference profile") {
  auto f = map(F2(), "z^2");
  auto pts = enumerate_points(F2(), 1, 1);
  CanonicalHeightOptions opt;
  auto same = height_difference_profile(f, f, pts, opt);
  CHECK(same.spread <= 2 * opt.eps);

  auto consts = enumerate_points(F2(), 2, 0);
  auto c = height_difference_profile(f, map(F2(), "z^3"), consts, opt);
  for (const auto& e : c.entries) CHECK(abs(e.difference) <= 2 * opt.eps);

  auto g = map(F2(), "z^2+t");
  std::vector<ProjPoint> sample{pt(F2(), "[t:1]"), pt(F2(), "[t^2:1]")};
  auto p = height_difference_profile(f, g, sample, opt, 2);
  REQUIRE(p.entries.size() == 2);
  for (const auto& e : p.entries) {
    // Independent telescoping values after 16 iterations: |h - ratio| <= C/(d^16 (d-1)).
    Rational tol = 3 * Rational(1, 65536);
    Rational hf = oracle::iterated_height_ratio(f, e.point, 16);
    Rational hg = oracle::iterated_height_ratio(g, e.point, 16);
    CHECK(abs(e.difference - (hf - hg)) <= e.bound + tol);
  }
  CHECK(p.entries[0].difference == 1 - p.entries[0].hg.value);
  CHECK(p.spread == p.max - p.min);

  auto empty = height_difference_profile(f, g, {}, opt);
  CHECK(empty.entries.empty());
}

TEST_CASE("polarization independence") {
  auto f = map(F2(), "z^2");
  std::vector<ProjPoint> sample{pt(F2(), "[t:1]")};
  auto one = polarization_independence_check(f, 1, sample);
  CHECK(one.pass);
  CHECK(one.entries[0].difference == 0);

  auto two = polarization_independence_check(f, 2, sample);
  CHECK(two.pass);
  CHECK(two.entries[0].polarized.value == 2);
  CHECK(two.entries[0].base.value == 1);

  auto g = map(F2(), "z^2+t");
  auto three = polarization_independence_check(g, 3, {pt(F2(), "[0:1]")});
  CHECK(three.pass);
  CHECK(abs(three.entries[0].polarized.value - Rational(3, 2)) <= three.entries[0].polarized.error_bound);
  CHECK(abs(three.entries[0].base.value - Rational(1, 2)) <= three.entries[0].base.error_bound);

  // Mix of zero and positive heights; zero classifications agree.
  auto mixed = polarization_independence_check(g, 4, enumerate_points(F2(), 1, 1), {}, 3);
  CHECK(mixed.pass);
  CHECK(mixed.entries.back().zero_polarized);  // infinity is fixed
  CHECK_THROWS_AS(polarization_independence_check(g, 0, sample), DomainError);
  CHECK_FALSE(json_to_table(to_json(mixed)).empty());
}
