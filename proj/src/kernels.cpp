#include "amh/kernels.hpp"

#include <atomic>
#include <limits>

#include "amh/errors.hpp"
#include "amh/rng.hpp"

namespace amh::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::Auto};

bool cpu_has_avx2() {
#if defined(AMH_HAVE_AVX2_TU)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

bool use_avx2() {
  switch (g_backend.load(std::memory_order_relaxed)) {
    case Backend::Scalar:
      return false;
    case Backend::Avx2:
      return true;
    case Backend::Auto:
    default:
      // Cached after first query; cpu support cannot change at runtime.
      static const bool supported = cpu_has_avx2();
      return supported;
  }
}

}  // namespace

bool avx2_supported() {
  static const bool supported = cpu_has_avx2();
  return supported;
}

void set_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_supported()) {
    throw ArgumentError("AVX2 backend requested but not available on this machine");
  }
  g_backend.store(b, std::memory_order_relaxed);
}

Backend active_backend() { return use_avx2() ? Backend::Avx2 : Backend::Scalar; }

std::uint64_t min_mix_indices_scalar(std::uint64_t key, const std::uint32_t* idx,
                                     std::size_t n) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t v = rng::mix64(key + static_cast<std::uint64_t>(idx[j]) * rng::kGolden);
    if (v < best) best = v;
  }
  return best;
}

std::uint64_t min_mix_range_scalar(std::uint64_t key, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t arg = key + lo * rng::kGolden;
  for (std::uint64_t i = lo; i < hi; ++i, arg += rng::kGolden) {
    std::uint64_t v = rng::mix64(arg);
    if (v < best) best = v;
  }
  return best;
}

std::uint64_t min_mix_indices(std::uint64_t key, const std::uint32_t* idx, std::size_t n) {
#if defined(AMH_HAVE_AVX2_TU)
  if (use_avx2()) return detail::min_mix_indices_avx2(key, idx, n);
#endif
  return min_mix_indices_scalar(key, idx, n);
}

std::uint64_t min_mix_range(std::uint64_t key, std::uint64_t lo, std::uint64_t hi) {
#if defined(AMH_HAVE_AVX2_TU)
  if (use_avx2()) return detail::min_mix_range_avx2(key, lo, hi);
#endif
  return min_mix_range_scalar(key, lo, hi);
}

}  // namespace amh::kernels
