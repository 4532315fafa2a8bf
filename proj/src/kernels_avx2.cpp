// AVX2 variants of the minwise kernels.  This translation unit is compiled
// with -mavx2 and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>
#include <cstdint>
#include <limits>

#include "amh/kernels.hpp"
#include "amh/rng.hpp"

namespace amh::kernels::detail {

namespace {

inline __m256i xor_shift_right(__m256i x, int s) {
  return _mm256_xor_si256(x, _mm256_srli_epi64(x, s));
}

// Low 64 bits of a 64x64 multiply by constant c, per lane.
inline __m256i mul64_const(__m256i a, std::uint64_t c) {
  const __m256i c_lo = _mm256_set1_epi64x(static_cast<long long>(c & 0xFFFFFFFFULL));
  const __m256i c_hi = _mm256_set1_epi64x(static_cast<long long>(c >> 32));
  __m256i lo_lo = _mm256_mul_epu32(a, c_lo);
  __m256i a_hi = _mm256_srli_epi64(a, 32);
  __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, c_lo), _mm256_mul_epu32(a, c_hi));
  return _mm256_add_epi64(lo_lo, _mm256_slli_epi64(cross, 32));
}

inline __m256i mix64_lanes(__m256i x) {
  x = xor_shift_right(x, 30);
  x = mul64_const(x, 0xBF58476D1CE4E5B9ULL);
  x = xor_shift_right(x, 27);
  x = mul64_const(x, 0x94D049BB133111EBULL);
  x = xor_shift_right(x, 31);
  return x;
}

// Unsigned 64-bit minimum per lane (flip sign bit, compare signed).
inline __m256i umin64(__m256i a, __m256i b) {
  const __m256i sign = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
  __m256i gt = _mm256_cmpgt_epi64(_mm256_xor_si256(a, sign), _mm256_xor_si256(b, sign));
  return _mm256_blendv_epi8(a, b, gt);
}

inline std::uint64_t horizontal_min(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  std::uint64_t best = lanes[0];
  if (lanes[1] < best) best = lanes[1];
  if (lanes[2] < best) best = lanes[2];
  if (lanes[3] < best) best = lanes[3];
  return best;
}

}  // namespace

std::uint64_t min_mix_indices_avx2(std::uint64_t key, const std::uint32_t* idx,
                                   std::size_t n) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  __m256i best = _mm256_set1_epi64x(static_cast<long long>(kMax));
  const __m256i key_v = _mm256_set1_epi64x(static_cast<long long>(key));
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m128i packed = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + j));
    __m256i wide = _mm256_cvtepu32_epi64(packed);
    __m256i arg = _mm256_add_epi64(key_v, mul64_const(wide, rng::kGolden));
    best = umin64(best, mix64_lanes(arg));
  }
  std::uint64_t result = horizontal_min(best);
  for (; j < n; ++j) {
    std::uint64_t v = rng::mix64(key + static_cast<std::uint64_t>(idx[j]) * rng::kGolden);
    if (v < result) result = v;
  }
  return result;
}

std::uint64_t min_mix_range_avx2(std::uint64_t key, std::uint64_t lo, std::uint64_t hi) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (lo >= hi) return kMax;
  std::uint64_t count = hi - lo;
  std::uint64_t base = key + lo * rng::kGolden;
  __m256i best = _mm256_set1_epi64x(static_cast<long long>(kMax));
  __m256i arg = _mm256_set_epi64x(static_cast<long long>(base + 3 * rng::kGolden),
                                  static_cast<long long>(base + 2 * rng::kGolden),
                                  static_cast<long long>(base + rng::kGolden),
                                  static_cast<long long>(base));
  const __m256i step = _mm256_set1_epi64x(static_cast<long long>(4 * rng::kGolden));
  std::uint64_t blocks = count / 4;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    best = umin64(best, mix64_lanes(arg));
    arg = _mm256_add_epi64(arg, step);
  }
  std::uint64_t result = horizontal_min(best);
  std::uint64_t tail_arg = base + (blocks * 4) * rng::kGolden;
  for (std::uint64_t i = blocks * 4; i < count; ++i, tail_arg += rng::kGolden) {
    std::uint64_t v = rng::mix64(tail_arg);
    if (v < result) result = v;
  }
  return result;
}

}  // namespace amh::kernels::detail
