#pragma once

#include "ffdyn/dynamics.hpp"
#include "ffdyn/projpoint.hpp"

#include <omp.h>

#include <exception>
#include <optional>
#include <vector>

namespace ffdyn::kernels {

// Each kernel has a serial reference and an OpenMP version producing
// identical output: work is split into independent index ranges and results
// are written by index, so the merge order never depends on scheduling.
// threads <= 0 means the OpenMP default.

/// Denominator blocks of the height <= H enumeration over the degree-m
/// extension of base: every monic b of degree <= H, ascending. Infinity is
/// handled separately and comes last.
std::vector<Poly> enumeration_blocks(const GaloisField& base, unsigned m, long long H);

namespace detail {


template <class Out, class Fn>
void scan_block(const Poly& b, long long H, unsigned m, Fn& fn, std::vector<Out>& out) {
  for (const auto& x : enumerate_block(b, H, m))
    if (auto r = fn(x)) out.push_back(std::move(*r));
}

}  // namespace detail

/// Applies fn : ProjPoint -> optional<Out> to every point of height <= H over
/// the degree-m extension, keeping engaged results in enumeration order.
template <class Out, class Fn>
std::vector<Out> scan_points_serial(const GaloisField& base, unsigned m, long long H, Fn fn) {
  const auto blocks = enumeration_blocks(base, m, H);
  std::vector<Out> out;
  for (const auto& b : blocks) detail::scan_block(b, H, m, fn, out);
  if (auto r = fn(ProjPoint::infinity(extension_field(base, m), m))) out.push_back(std::move(*r));
  return out;
}

template <class Out, class Fn>
std::vector<Out> scan_points_parallel(const GaloisField& base, unsigned m, long long H, Fn fn, int threads = 0) {
  const auto blocks = enumeration_blocks(base, m, H);
  std::vector<std::vector<Out>> parts(blocks.size());
  std::exception_ptr failure;
  const long long n = static_cast<long long>(blocks.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long i = 0; i < n; ++i) {
    try {
      detail::scan_block(blocks[i], H, m, fn, parts[i]);
    } catch (...) {
#pragma omp critical(ffdyn_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<Out> out;
  for (auto& p : parts)
    for (auto& x : p) out.push_back(std::move(x));
  if (auto r = fn(ProjPoint::infinity(extension_field(base, m), m))) out.push_back(std::move(*r));
  return out;
}

/// out[i] = fn(i) for i < n.
template <class Out, class Fn>
std::vector<Out> map_indices_serial(std::size_t n, Fn fn) {
  std::vector<Out> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  return out;
}

template <class Out, class Fn>
std::vector<Out> map_indices_parallel(std::size_t n, Fn fn, int threads = 0) {
  std::vector<Out> out(n);
  std::exception_ptr failure;
  const long long count = static_cast<long long>(n);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long long i = 0; i < count; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ffdyn_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

/// Preperiodic points of height <= H over the degree-m extension of f's field.
std::vector<ProjPoint> prep_set_serial(const RationalMap& f, unsigned m, long long H,
                                       std::uint64_t cap = kDefaultEnumerationCap);
std::vector<ProjPoint> prep_set_parallel(const RationalMap& f, unsigned m, long long H,
                                         std::uint64_t cap = kDefaultEnumerationCap, int threads = 0);

std::vector<HeightEstimate> canonical_heights_serial(const RationalMap& f, const std::vector<ProjPoint>& xs,
                                                     const CanonicalHeightOptions& opt = {});
std::vector<HeightEstimate> canonical_heights_parallel(const RationalMap& f, const std::vector<ProjPoint>& xs,
                                                       const CanonicalHeightOptions& opt = {}, int threads = 0);

std::vector<char> preperiodic_flags_serial(const RationalMap& f, const std::vector<ProjPoint>& xs);
std::vector<char> preperiodic_flags_parallel(const RationalMap& f, const std::vector<ProjPoint>& xs,
                                             int threads = 0);

}  // namespace ffdyn::kernels
