#pragma once

// Locality-sensitive hash families over sets and real vectors: minwise
// hashing, universe-coordinate sampling, sign random projections, p-stable
// Euclidean bucketing, and consistent weighted sampling.  Every hash value is
// a pure function of (master_seed, hash index t, input), so evaluation can be
// reordered or parallelized freely.

#include <cstdint>

#include "amh/common.hpp"
#include "amh/sparse_data.hpp"
#include "amh/weighted_vector.hpp"

namespace amh {

enum class SchemeKind {
  Minhash,   // minwise hashing of binary sets
  SampleHS,  // sampled universe coordinate with keyed fallback value
  SRP,       // sign of a gaussian random projection
  L2LSH,     // quantized gaussian projection (floor((w.v + b)/r))
  CWS,       // consistent weighted sampling of nonnegative vectors
};

struct HashScheme {
  SchemeKind kind = SchemeKind::Minhash;
  std::uint64_t master_seed = kDefaultSeed;
  // Fallback value range N for SampleHS: misses draw uniformly from [1, N].
  std::uint64_t sample_range = kDefaultSampleRange;
  // Bucket width r for L2LSH.
  double bucket_width = 2.5;
  // Universe size used by operations that are not handed one explicitly
  // (collision estimation for SampleHS).
  std::uint64_t effective_dim = 1;

  bool operator==(const HashScheme&) const = default;
};

struct HashValue {
  std::uint64_t value = 0;
  bool operator==(const HashValue&) const = default;
};

// A sparse real vector for projection hashes: n strictly increasing indices
// with optional parallel values (null -> every value is 1.0), plus an
// optional dense tail occupying indices [tail_offset, tail_offset + tail_n).
// Values may be negative; zero values contribute nothing and are skipped.
struct RealVectorView {
  const std::uint32_t* idx = nullptr;
  const double* val = nullptr;
  std::size_t n = 0;
  std::uint64_t tail_offset = 0;
  const double* tail = nullptr;
  std::size_t tail_n = 0;
};

RealVectorView as_view(const SparseBinarySet& x);
RealVectorView as_view(const WeightedSparseVector& v);

// Smallest mixed value over the set: min over i in x of a keyed bijective
// 64-bit mix of i.  Injectivity of the mix for fixed (seed, t) makes the
// minimizing element well-defined.  Throws EmptyInputError on an empty set.
HashValue minhash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x);

// Draw one universe coordinate uniformly from [0, D) keyed by (seed, t); a
// hit returns 0, a miss returns a value uniform in [1, N] keyed additionally
// by the caller-supplied entity id.  Distinct entities must pass distinct
// ids so their fallback draws are independent.
HashValue sample_hash_hs(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x,
                         std::uint64_t D, std::uint64_t entity_id);

// Sign of the gaussian projection keyed by (seed, t, index); sign(0) is +1.
// Returns value 1 for nonnegative projections and 0 for negative ones.
HashValue srp_hash(const HashScheme& s, std::uint64_t t, const RealVectorView& v);
HashValue srp_hash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x);
HashValue srp_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v);

// floor((w.v + b) / r) with gaussian w keyed by (seed, t, index) and offset b
// uniform on [0, r) keyed by (seed, t).
HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const RealVectorView& v);
HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x);
HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v);

// Consistent weighted sampling: per active index, three keyed draws (two
// Gamma(2,1), one uniform) select a quantized level; the output packs the
// arg-minimizing index and its level.  Collision probability equals the
// weighted Jaccard similarity.  Throws EmptyInputError on an empty vector.
HashValue cws_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v);

// Fraction of t in [0, K) whose hashes of u and v collide.  The set overload
// serves Minhash, SampleHS (entity ids 0 and 1, D = effective_dim), SRP,
// L2LSH, and CWS (unit weights); the weighted overload serves SRP, L2LSH and
// CWS.
double estimate_collision(const HashScheme& s, const SparseBinarySet& u,
                          const SparseBinarySet& v, std::uint64_t K);
double estimate_collision(const HashScheme& s, const WeightedSparseVector& u,
                          const WeightedSparseVector& v, std::uint64_t K);

}  // namespace amh
