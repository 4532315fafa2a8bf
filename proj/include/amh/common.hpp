#pragma once

#include <cstdint>

namespace amh {

// Seed used by the CLI and test fixtures when the caller supplies none.
inline constexpr std::uint64_t kDefaultSeed = 1729;

// Default size of the fallback value range for coordinate-sampling hashes.
inline constexpr std::uint64_t kDefaultSampleRange = std::uint64_t{1} << 31;

}  // namespace amh
