#pragma once

// Hot inner loops of minwise hashing: the minimum of mix64(key + i*kGolden)
// over a set of element indices i.  A scalar reference implementation is
// always available; on x86-64 an AVX2 variant is selected at runtime when the
// CPU supports it.  Both produce bit-identical results by construction, and
// the test suite checks that equivalence.

#include <cstddef>
#include <cstdint>

namespace amh::kernels {

enum class Backend { Auto, Scalar, Avx2 };

// Override the implementation choice (test hook).  Requesting Avx2 on a
// machine without AVX2 support throws ArgumentError.
void set_backend(Backend b);

// The implementation that a dispatched call would use right now.
Backend active_backend();

// True when this build carries the AVX2 variant and the CPU supports it.
bool avx2_supported();

// Minimum of mix64(key + idx[j] * kGolden) over j in [0, n); ~0 when n == 0.
std::uint64_t min_mix_indices(std::uint64_t key, const std::uint32_t* idx, std::size_t n);

// Minimum of mix64(key + i * kGolden) over i in [lo, hi); ~0 when lo >= hi.
std::uint64_t min_mix_range(std::uint64_t key, std::uint64_t lo, std::uint64_t hi);

// Reference implementations, exposed for equivalence testing.
std::uint64_t min_mix_indices_scalar(std::uint64_t key, const std::uint32_t* idx,
                                     std::size_t n);
std::uint64_t min_mix_range_scalar(std::uint64_t key, std::uint64_t lo, std::uint64_t hi);

namespace detail {
// AVX2 variants; defined only in builds that include the AVX2 translation
// unit, and callable only on CPUs where avx2_supported() is true.
std::uint64_t min_mix_indices_avx2(std::uint64_t key, const std::uint32_t* idx,
                                   std::size_t n);
std::uint64_t min_mix_range_avx2(std::uint64_t key, std::uint64_t lo, std::uint64_t hi);
}  // namespace detail

}  // namespace amh::kernels
