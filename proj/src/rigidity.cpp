#include "ffdyn/rigidity.hpp"

#include "ffdyn/errors.hpp"
#include "ffdyn/json_io.hpp"
#include "ffdyn/kernels.hpp"

#include <algorithm>

namespace ffdyn {

namespace {

struct Membership {
  ProjPoint point;
  bool in_f = false, in_g = false;
};

struct MembershipPredicate {
  const RationalMap* f;
  const RationalMap* g;
  std::optional<Membership> operator()(const ProjPoint& x) const {
    Membership r{x, is_preperiodic(*f, x), is_preperiodic(*g, x)};
    if (r.in_f || r.in_g) return r;
    return std::nullopt;
  }
};

const RationalMap& matching(const RationalMap& f, const ProjPoint& x, std::optional<RationalMap>& cache) {
  if (&x.field() == &f.field()) return f;
  if (!cache || &cache->field() != &x.field()) cache = f.over(x.field());
  return *cache;
}

HeightDifference difference_at(const RationalMap& f, const RationalMap& g, const ProjPoint& x,
                               const CanonicalHeightOptions& opt) {
  std::optional<RationalMap> fc, gc;
  HeightDifference e{x, canonical_height(matching(f, x, fc), x, opt), canonical_height(matching(g, x, gc), x, opt), 0, 0};
  e.difference = e.hf.value - e.hg.value;
  e.bound = e.hf.error_bound + e.hg.error_bound;
  return e;
}

HeightDifferenceProfile summarize(std::vector<HeightDifference> entries) {
  HeightDifferenceProfile p;
  p.entries = std::move(entries);
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const auto& e = p.entries[i];
    if (i == 0 || e.difference < p.min) p.min = e.difference;
    if (i == 0 || e.difference > p.max) p.max = e.difference;
    p.max_bound = std::max(p.max_bound, e.bound);
  }
  p.spread = p.max - p.min;
  return p;
}

void check_common_field(const RationalMap& f, const RationalMap& g) {
  if (&f.field() != &g.field()) throw ValidationError("the two maps must be defined over the same field");
}

ComparisonReport build_report(const RationalMap& f, const RationalMap& g, unsigned m, long long H,
                              const ScanOptions& opt, const std::vector<Membership>& found, bool parallel) {
  ComparisonReport r;
  r.m = m;
  r.H = H;
  r.eps = opt.heights.eps;
  const auto& ext = extension_field(f.field(), m);
  r.scanned = static_cast<std::uint64_t>(point_count(ext.order(), H));
  for (const auto& x : found) {
    if (x.in_f && x.in_g)
      r.common.push_back(x.point);
    else if (x.in_f)
      r.only_f.push_back(x.point);
    else
      r.only_g.push_back(x.point);
  }
  r.agree = r.only_f.empty() && r.only_g.empty();
  r.common_nonconstant =
      std::any_of(r.common.begin(), r.common.end(), [](const ProjPoint& x) { return !x.is_constant(); });
  r.threshold = opt.threshold ? opt.threshold : static_cast<std::uint64_t>(ext.order()) + 1;
  r.common_exceeds_threshold = r.common.size() > r.threshold;

  const RationalMap fe = f.over(ext), ge = g.over(ext);
  auto heights = [&](std::size_t i) { return difference_at(fe, ge, r.common[i], opt.heights); };
  r.common_heights = summarize(parallel ? kernels::map_indices_parallel<HeightDifference>(r.common.size(), heights, opt.threads)
                                        : kernels::map_indices_serial<HeightDifference>(r.common.size(), heights));
  r.verified = true;
  for (const auto& e : r.common_heights.entries)
    if (e.hf.value > r.eps || e.hg.value > r.eps) r.verified = false;
  for (const auto& x : r.only_f)
    if (!is_preperiodic(fe, x) || is_preperiodic(ge, x)) r.verified = false;
  for (const auto& x : r.only_g)
    if (is_preperiodic(fe, x) || !is_preperiodic(ge, x)) r.verified = false;
  return r;
}

}  // namespace

ComparisonReport common_prep_scan_serial(const RationalMap& f, const RationalMap& g, unsigned m, long long H,
                                         const ScanOptions& opt) {
  check_common_field(f, g);
  const auto& ext = extension_field(f.field(), m);
  check_enumeration_cap(ext.order(), H, opt.enumeration_cap);
  const RationalMap fe = f.over(ext), ge = g.over(ext);
  auto found = kernels::scan_points_serial<Membership>(f.field(), m, H, MembershipPredicate{&fe, &ge});
  return build_report(f, g, m, H, opt, found, false);
}

ComparisonReport common_prep_scan(const RationalMap& f, const RationalMap& g, unsigned m, long long H,
                                  const ScanOptions& opt) {
  check_common_field(f, g);
  const auto& ext = extension_field(f.field(), m);
  check_enumeration_cap(ext.order(), H, opt.enumeration_cap);
  const RationalMap fe = f.over(ext), ge = g.over(ext);
  auto found = kernels::scan_points_parallel<Membership>(f.field(), m, H, MembershipPredicate{&fe, &ge}, opt.threads);
  return build_report(f, g, m, H, opt, found, true);
}

HeightDifferenceProfile height_difference_profile(const RationalMap& f, const RationalMap& g,
                                                  const std::vector<ProjPoint>& sample,
                                                  const CanonicalHeightOptions& opt, int threads) {
  check_common_field(f, g);
  if (opt.eps <= 0) throw DomainError("eps must be positive");
  return summarize(kernels::map_indices_parallel<HeightDifference>(
      sample.size(), [&](std::size_t i) { return difference_at(f, g, sample[i], opt); }, threads));
}

PolarizationReport polarization_independence_check(const RationalMap& f, unsigned d,
                                                   const std::vector<ProjPoint>& sample,
                                                   const CanonicalHeightOptions& opt, int threads) {
  if (d < 1) throw DomainError("polarization degree must be >= 1");
  if (opt.eps <= 0) throw DomainError("eps must be positive");
  PolarizationReport rep;
  rep.d = d;
  rep.eps = opt.eps;
  CanonicalHeightOptions base = opt, polarized = opt;
  base.polarization = 1;
  polarized.polarization = d;
  rep.entries = kernels::map_indices_parallel<PolarizationEntry>(
      sample.size(),
      [&](std::size_t i) {
        std::optional<RationalMap> cache;
        const RationalMap& fx = matching(f, sample[i], cache);
        PolarizationEntry e;
        e.point = sample[i];
        e.polarized = canonical_height(fx, e.point, polarized);
        e.base = canonical_height(fx, e.point, base);
        e.difference = e.polarized.value - Rational(d) * e.base.value;
        e.within = abs(e.difference) <= Rational(d + 1) * opt.eps;
        e.zero_polarized = e.polarized.value <= e.polarized.error_bound;
        e.zero_base = e.base.value <= e.base.error_bound;
        return e;
      },
      threads);
  rep.pass = std::all_of(rep.entries.begin(), rep.entries.end(),
                         [](const PolarizationEntry& e) { return e.within && e.zero_polarized == e.zero_base; });
  return rep;
}

namespace {

nlohmann::json estimate_json(const HeightEstimate& h) {
  return {{"value", rational_to_json(h.value)},
          {"error_bound", rational_to_json(h.error_bound)},
          {"exact", h.exact},
          {"iterations", h.iterations}};
}

nlohmann::json points_json(const std::vector<ProjPoint>& xs) {
  auto arr = nlohmann::json::array();
  for (const auto& x : xs) arr.push_back(format_point(x));
  return arr;
}

}  // namespace

nlohmann::json to_json(const HeightDifferenceProfile& p) {
  auto entries = nlohmann::json::array();
  for (const auto& e : p.entries)
    entries.push_back({{"point", format_point(e.point)},
                       {"h_f", estimate_json(e.hf)},
                       {"h_g", estimate_json(e.hg)},
                       {"difference", rational_to_json(e.difference)},
                       {"bound", rational_to_json(e.bound)}});
  return {{"entries", entries},
          {"min", rational_to_json(p.min)},
          {"max", rational_to_json(p.max)},
          {"spread", rational_to_json(p.spread)},
          {"max_bound", rational_to_json(p.max_bound)}};
}

nlohmann::json to_json(const ComparisonReport& r) {
  return {{"m", r.m},
          {"H", r.H},
          {"eps", rational_to_json(r.eps)},
          {"scanned", r.scanned},
          {"common", points_json(r.common)},
          {"only_f", points_json(r.only_f)},
          {"only_g", points_json(r.only_g)},
          {"verdict", r.agree ? "agree-on-scan" : "disagree-on-scan"},
          {"common_nonconstant", r.common_nonconstant},
          {"threshold", r.threshold},
          {"common_exceeds_threshold", r.common_exceeds_threshold},
          {"verified", r.verified},
          {"common_heights", to_json(r.common_heights)}};
}

nlohmann::json to_json(const PolarizationReport& r) {
  auto entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"point", format_point(e.point)},
                       {"polarized", estimate_json(e.polarized)},
                       {"base", estimate_json(e.base)},
                       {"difference", rational_to_json(e.difference)},
                       {"within", e.within},
                       {"zero_polarized", e.zero_polarized},
                       {"zero_base", e.zero_base}});
  return {{"d", r.d}, {"eps", rational_to_json(r.eps)}, {"entries", entries}, {"pass", r.pass}};
}

}  // namespace ffdyn
