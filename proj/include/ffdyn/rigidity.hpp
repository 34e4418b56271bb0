#pragma once

#include "ffdyn/dynamics.hpp"
#include "ffdyn/projpoint.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ffdyn {

struct ScanOptions {
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  CanonicalHeightOptions heights;
  /// Common sets larger than this count as a rigidity signal even when they
  /// are all constant; 0 means the number of constant points Q + 1.
  std::uint64_t threshold = 0;
  int threads = 0;
};

struct HeightDifference {
  ProjPoint point;
  HeightEstimate hf, hg;
  Rational difference;  // hf - hg
  Rational bound;       // hf.error_bound + hg.error_bound
};

struct HeightDifferenceProfile {
  std::vector<HeightDifference> entries;
  Rational min, max, spread, max_bound;
};

/// Prep(f) and Prep(g) within the height <= H points of P^1(K_m).
struct ComparisonReport {
  unsigned m = 1;
  long long H = 0;
  Rational eps;
  std::uint64_t scanned = 0;
  std::vector<ProjPoint> common, only_f, only_g;
  bool agree = false;               // both differences empty
  bool common_nonconstant = false;  // some common point is not constant
  std::uint64_t threshold = 0;
  bool common_exceeds_threshold = false;
  /// Every member re-verified: preperiodicity rechecked, and every common
  /// point has both canonical heights <= eps.
  bool verified = false;
  HeightDifferenceProfile common_heights;
};

ComparisonReport common_prep_scan_serial(const RationalMap& f, const RationalMap& g, unsigned m, long long H,
                                         const ScanOptions& opt = {});
ComparisonReport common_prep_scan(const RationalMap& f, const RationalMap& g, unsigned m, long long H,
                                  const ScanOptions& opt = {});

/// Per-point canonical_height(f) - canonical_height(g) with propagated bounds.
/// Points may lie over a constant extension; the maps are extended to match.
HeightDifferenceProfile height_difference_profile(const RationalMap& f, const RationalMap& g,
                                                  const std::vector<ProjPoint>& sample,
                                                  const CanonicalHeightOptions& opt = {}, int threads = 0);

struct PolarizationEntry {
  ProjPoint point;
  HeightEstimate polarized;  // canonical height for O(d)
  HeightEstimate base;       // canonical height for O(1)
  Rational difference;       // polarized - d * base
  bool within = false;       // |difference| <= (d + 1) eps
  bool zero_polarized = false, zero_base = false;  // value <= error bound
};

struct PolarizationReport {
  unsigned d = 1;
  Rational eps;
  std::vector<PolarizationEntry> entries;
  bool pass = false;  // all within and zero classifications agree
};

PolarizationReport polarization_independence_check(const RationalMap& f, unsigned d,
                                                   const std::vector<ProjPoint>& sample,
                                                   const CanonicalHeightOptions& opt = {}, int threads = 0);

nlohmann::json to_json(const HeightDifferenceProfile& p);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const PolarizationReport& r);

}  // namespace ffdyn
