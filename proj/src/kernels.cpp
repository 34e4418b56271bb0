#include "ffdyn/kernels.hpp"

namespace ffdyn::kernels {

std::vector<Poly> enumeration_blocks(const GaloisField& base, unsigned m, long long H) {
  return polys_up_to(extension_field(base, m), H, true);
}

namespace {

struct PrepPredicate {
  const RationalMap* f;
  std::optional<ProjPoint> operator()(const ProjPoint& x) const {
    if (is_preperiodic(*f, x)) return x;
    return std::nullopt;
  }
};

}  // namespace

std::vector<ProjPoint> prep_set_serial(const RationalMap& f, unsigned m, long long H, std::uint64_t cap) {
  const auto& ext = extension_field(f.field(), m);
  check_enumeration_cap(ext.order(), H, cap);
  const RationalMap g = f.over(ext);
  return scan_points_serial<ProjPoint>(f.field(), m, H, PrepPredicate{&g});
}

std::vector<ProjPoint> prep_set_parallel(const RationalMap& f, unsigned m, long long H, std::uint64_t cap,
                                         int threads) {
  const auto& ext = extension_field(f.field(), m);
  check_enumeration_cap(ext.order(), H, cap);
  const RationalMap g = f.over(ext);
  return scan_points_parallel<ProjPoint>(f.field(), m, H, PrepPredicate{&g}, threads);
}

std::vector<HeightEstimate> canonical_heights_serial(const RationalMap& f, const std::vector<ProjPoint>& xs,
                                                     const CanonicalHeightOptions& opt) {
  return map_indices_serial<HeightEstimate>(xs.size(), [&](std::size_t i) { return canonical_height(f, xs[i], opt); });
}

std::vector<HeightEstimate> canonical_heights_parallel(const RationalMap& f, const std::vector<ProjPoint>& xs,
                                                       const CanonicalHeightOptions& opt, int threads) {
  return map_indices_parallel<HeightEstimate>(
      xs.size(), [&](std::size_t i) { return canonical_height(f, xs[i], opt); }, threads);
}

std::vector<char> preperiodic_flags_serial(const RationalMap& f, const std::vector<ProjPoint>& xs) {
  return map_indices_serial<char>(xs.size(), [&](std::size_t i) { return char(is_preperiodic(f, xs[i])); });
}

std::vector<char> preperiodic_flags_parallel(const RationalMap& f, const std::vector<ProjPoint>& xs, int threads) {
  return map_indices_parallel<char>(
      xs.size(), [&](std::size_t i) { return char(is_preperiodic(f, xs[i])); }, threads);
}

}  // namespace ffdyn::kernels
