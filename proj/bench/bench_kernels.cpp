// Serial reference against OpenMP kernels on the same inputs.

#include "ffdyn/elliptic.hpp"
#include "ffdyn/kernels.hpp"
#include "ffdyn/rigidity.hpp"

#include <benchmark/benchmark.h>

using namespace ffdyn;

namespace {

const RationalMap& scan_map() {
  static const RationalMap f = RationalMap::parse(GaloisField::get(2, 2), "(z^2+t)/(z)");
  return f;
}

const std::vector<ProjPoint>& height_sample() {
  static const auto pts = random_points(GaloisField::get(3, 1), 1, 3, 64, 20240521);
  return pts;
}

const EllipticCurve& curve() {
  static const EllipticCurve E = parse_curve(GaloisField::get(5, 1), "[t^2+3, 1]");
  return E;
}

std::vector<EPoint> gram_points() {
  const auto& E = curve();
  auto pts = search_points(E, 1, 1);
  pts.resize(std::min<std::size_t>(pts.size(), 4));
  return pts;
}

void BM_PrepScanSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::prep_set_serial(scan_map(), 1, st.range(0)));
}
void BM_PrepScanParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::prep_set_parallel(scan_map(), 1, st.range(0)));
}

void BM_CanonicalHeightsSerial(benchmark::State& st) {
  const auto f = RationalMap::parse(GaloisField::get(3, 1), "z^2+t");
  for (auto _ : st) benchmark::DoNotOptimize(kernels::canonical_heights_serial(f, height_sample()));
}
void BM_CanonicalHeightsParallel(benchmark::State& st) {
  const auto f = RationalMap::parse(GaloisField::get(3, 1), "z^2+t");
  for (auto _ : st) benchmark::DoNotOptimize(kernels::canonical_heights_parallel(f, height_sample()));
}

void BM_GramSerial(benchmark::State& st) {
  const auto pts = gram_points();
  for (auto _ : st) benchmark::DoNotOptimize(gram_matrix_serial(curve(), pts, {Rational(1, 100)}));
}
void BM_GramParallel(benchmark::State& st) {
  const auto pts = gram_points();
  for (auto _ : st) benchmark::DoNotOptimize(gram_matrix_parallel(curve(), pts, {Rational(1, 100)}));
}

void BM_RigiditySerial(benchmark::State& st) {
  const auto& F = GaloisField::get(2, 2);
  const auto f = RationalMap::parse(F, "z^2"), g = RationalMap::parse(F, "z^2+t");
  for (auto _ : st) benchmark::DoNotOptimize(common_prep_scan_serial(f, g, 1, st.range(0)));
}
void BM_RigidityParallel(benchmark::State& st) {
  const auto& F = GaloisField::get(2, 2);
  const auto f = RationalMap::parse(F, "z^2"), g = RationalMap::parse(F, "z^2+t");
  for (auto _ : st) benchmark::DoNotOptimize(common_prep_scan(f, g, 1, st.range(0)));
}

}  // namespace

BENCHMARK(BM_PrepScanSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrepScanParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalHeightsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CanonicalHeightsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RigiditySerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RigidityParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
