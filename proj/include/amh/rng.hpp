#pragma once

// Deterministic keyed randomness.
//
// Every random quantity in the library is a pure function of (seed, purpose
// tag, stream index, element index) built from the splitmix64 finalizer.
// Nothing here keeps hidden state, so any hash value or random draw can be
// recomputed independently and in any order — the property the rest of the
// library relies on for parallelism and for reproducible experiments.

#include <cstdint>
#include <vector>

#include "amh/errors.hpp"

namespace amh::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Distinct purpose tags keep independent uses of the same seed decorrelated.
inline constexpr std::uint64_t kTagMinwise = 0xA11CE001;
inline constexpr std::uint64_t kTagSampleCoord = 0xA11CE002;
inline constexpr std::uint64_t kTagSampleFallback = 0xA11CE003;
inline constexpr std::uint64_t kTagSrpProj = 0xA11CE004;
inline constexpr std::uint64_t kTagL2Proj = 0xA11CE005;
inline constexpr std::uint64_t kTagL2Offset = 0xA11CE006;
inline constexpr std::uint64_t kTagConsistentWeighted = 0xA11CE007;
inline constexpr std::uint64_t kTagPartition = 0xA11CE008;
inline constexpr std::uint64_t kTagCorpus = 0xA11CE009;

// Root key of a (seed, purpose) stream.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ tag);
}

// Key of sub-stream t within a stream; also the per-element value map:
// derive(key_t, i) is injective in i for fixed key_t because kGolden is odd
// and mix64 is a bijection.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t t) {
  return mix64(key + t * kGolden);
}

// Map a 64-bit word to a double in [0, 1) with 53-bit resolution.
inline double to_unit(std::uint64_t u) {
  return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Map a 64-bit word to a double strictly inside (0, 1); safe under log().
// 52-bit resolution so the +0.5 offset stays exact at both ends (with a
// 53-bit mantissa the top word would round up to exactly 1.0).
inline double to_unit_open(std::uint64_t u) {
  return (static_cast<double>(u >> 12) + 0.5) * 0x1.0p-52;
}

// Inverse of the standard normal CDF (Acklam's rational approximation,
// relative error below 1.2e-9 across (0, 1)).  Sufficient for Monte-Carlo
// work; closed-form probabilities elsewhere use erfc directly.
double inverse_normal_cdf(double p);

// Standard normal variate from one 64-bit word.
inline double to_gaussian(std::uint64_t u) {
  return inverse_normal_cdf(to_unit_open(u));
}

// Unbiased-to-within-2^-64 bounded integer in [0, n) via 128-bit multiply.
inline std::uint64_t bounded(std::uint64_t u, std::uint64_t n) {
  if (n == 0) throw ArgumentError("bounded draw requires a positive range");
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(u) * static_cast<unsigned __int128>(n)) >> 64);
}

// Sequential draw stream: a keyed counter, for code whose draws happen in a
// fixed generation order (shuffles, synthetic data).  Order-independent code
// should key draws by (t, i) through derive() instead.
class Sequence {
 public:
  explicit Sequence(std::uint64_t key) : key_(key) {}
  Sequence(std::uint64_t seed, std::uint64_t tag) : key_(stream_key(seed, tag)) {}

  std::uint64_t next_u64() { return derive(key_, counter_++); }
  double next_unit() { return to_unit(next_u64()); }
  double next_unit_open() { return to_unit_open(next_u64()); }
  double next_gaussian() { return to_gaussian(next_u64()); }
  // Uniform integer in [lo, hi), hi > lo.
  std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo) throw ArgumentError("empty integer range");
    return lo + bounded(next_u64(), hi - lo);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// In-place Fisher–Yates shuffle driven by a Sequence.
template <typename T>
void shuffle(std::vector<T>& items, Sequence& seq) {
  if (items.size() < 2) return;
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(seq.next_in(0, i + 1));
    if (j != i) std::swap(items[i], items[j]);
  }
}

}  // namespace amh::rng
