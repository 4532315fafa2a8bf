#pragma once

// Asymmetric preprocessing/query transforms: binary padding for minwise
// hashing, weighted padding for consistent weighted sampling, and the
// norm-scaling augmentations used with Euclidean-bucket and sign-projection
// hashes.  Padding is virtual: padded ones occupy contiguous index ranges
// that are iterated, never materialized.

#include <cstdint>
#include <vector>

#include "amh/hash_families.hpp"
#include "amh/sparse_data.hpp"
#include "amh/weighted_vector.hpp"

namespace amh {

// A binary set over [0, D) plus contiguous runs of implicit ones in two
// reserved padding regions: pad1 occupies [D, D + pad1_count) inside region
// [D, D + M), pad2 occupies [D + M, D + M + pad2_count) inside [D + M,
// D + 2M).  Data-side and query-side transforms pad disjoint regions, so the
// padding of a data/query pair never intersects.
struct PaddedBinarySet {
  SparseBinarySet base;
  std::uint32_t universe_dim = 1;  // D
  std::uint32_t budget = 1;        // M
  std::uint32_t pad1_count = 0;
  std::uint32_t pad2_count = 0;
  // Set when a query-side transform had to clamp padding because the input
  // cardinality exceeded the budget.
  bool clamped = false;

  std::uint64_t total_cardinality() const {
    return static_cast<std::uint64_t>(base.cardinality()) + pad1_count + pad2_count;
  }
};

enum class MhRole { DataPrime, QueryPrime, DataDouble, QueryDouble };

// Pad a binary set for minwise hashing.  DataPrime/DataDouble put M - f ones
// in region 1; QueryDouble puts M - f ones in region 2; QueryPrime pads
// nothing (its appended zeros have no sparse representation).  Data roles
// require f <= M; query roles clamp the pad at zero and set `clamped` when
// f > M.
PaddedBinarySet transform_mh(const SparseBinarySet& x, std::uint32_t universe_dim,
                             std::uint32_t M, MhRole role);

// Minwise hash of a padded set, bit-identical to materializing the padding
// and hashing the union, but computed by scanning the contiguous pad ranges.
HashValue padded_minhash(const HashScheme& s, std::uint64_t t, const PaddedBinarySet& p);

// Collision-rate estimator over t in [0, K) for padded sets.
double estimate_collision(const HashScheme& s, const PaddedBinarySet& u,
                          const PaddedBinarySet& v, std::uint64_t K);

// Precomputed per-t minima over prefixes of the two padding regions.  Because
// every transform pads a contiguous prefix of its region, the pad minimum of
// any record is a table lookup, making repeated hashing of many padded sets
// O(f) instead of O(f + M).  Results are bit-identical to padded_minhash.
class PaddedMinhashCache {
 public:
  // Tables cover hash indices t in [0, t_count) for sets padded relative to
  // (universe_dim, M).
  PaddedMinhashCache(const HashScheme& s, std::uint32_t universe_dim, std::uint32_t M,
                     std::uint64_t t_count);

  HashValue hash(const PaddedBinarySet& p, std::uint64_t t) const;

  std::uint32_t budget() const { return budget_; }
  std::uint32_t universe_dim() const { return dim_; }

 private:
  HashScheme scheme_;
  std::uint32_t dim_;
  std::uint32_t budget_;
  std::uint64_t t_count_;
  // prefix[t * (M + 1) + len] = min mixed value over the first `len` indices
  // of the region; entry 0 is the empty-prefix sentinel (max value).
  std::vector<std::uint64_t> prefix1_, prefix2_;
};

enum class WeightedRole { DataTriple, QueryTriple };

// Weighted counterpart of the double padding: base indices get weight 1 and
// the leftover budget M - f lands on reserved coordinate D (data) or D + 1
// (query), so data/query appendices never share a coordinate.  The weighted
// Jaccard of a transformed pair is a / (2M - a).  Data roles require f <= M;
// query roles clamp the appended weight at zero and set *clamped.
WeightedSparseVector transform_weighted(const SparseBinarySet& x,
                                        std::uint32_t universe_dim, std::uint32_t M,
                                        WeightedRole role, bool* clamped = nullptr);

// Same padding for vectors that are already weighted: appends the leftover
// total weight M_w - sum(v) on the reserved coordinate for the role.  Data
// roles require sum(v) <= M_w; query roles clamp and set *clamped.
WeightedSparseVector transform_weighted_intersection(const WeightedSparseVector& v,
                                                     std::uint32_t universe_dim,
                                                     double M_w, WeightedRole role,
                                                     bool* clamped = nullptr);

// A real vector scaled by U/V with 2m appended components in [D, D + 2m).
// The body stays sparse (indices into [0, D)); the tail is dense.
class AugmentedRealVector {
 public:
  AugmentedRealVector(std::uint32_t universe_dim, std::uint32_t m, double U, double V,
                      std::vector<std::uint32_t> body_idx, std::vector<double> body_val,
                      std::vector<double> tail);

  std::uint32_t universe_dim() const { return dim_; }
  std::uint32_t m() const { return m_; }
  double U() const { return U_; }
  double V() const { return V_; }
  std::uint64_t length() const { return static_cast<std::uint64_t>(dim_) + 2 * m_; }
  const std::vector<std::uint32_t>& body_indices() const { return body_idx_; }
  const std::vector<double>& body_values() const { return body_val_; }
  const std::vector<double>& tail() const { return tail_; }
  double body_squared_norm() const;

  // Projection-hash view: sparse body plus dense tail at offset D.
  RealVectorView view() const;

 private:
  std::uint32_t dim_;
  std::uint32_t m_;
  double U_, V_;
  std::vector<std::uint32_t> body_idx_;
  std::vector<double> body_val_;
  std::vector<double> tail_;
};

enum class AugmentedRole { Data, Query };

// Scale by U/V, then append the norm powers ||v||^2, ||v||^4, ...,
// ||v||^(2^m) of the scaled vector and m halves.  Data order: powers then
// halves; Query order: halves then powers.
AugmentedRealVector transform_l2alsh(const WeightedSparseVector& v,
                                     std::uint32_t universe_dim, AugmentedRole role,
                                     std::uint32_t m, double U, double V);
AugmentedRealVector transform_l2alsh(const SparseBinarySet& x, std::uint32_t universe_dim,
                                     AugmentedRole role, std::uint32_t m, double U,
                                     double V);

// Scale by U/V, then append 1/2 - ||v||^(2^i) for i = 1..m and m zeros.
// Data order: scalers then zeros; Query order: zeros then scalers.  The
// data/query tails occupy disjoint halves, so Data(x).Query(q) equals the
// scaled inner product exactly.
AugmentedRealVector transform_signalsh(const WeightedSparseVector& v,
                                       std::uint32_t universe_dim, AugmentedRole role,
                                       std::uint32_t m, double U, double V);
AugmentedRealVector transform_signalsh(const SparseBinarySet& x,
                                       std::uint32_t universe_dim, AugmentedRole role,
                                       std::uint32_t m, double U, double V);

// Collision-rate estimator for augmented vectors (SRP or L2LSH schemes).
double estimate_collision(const HashScheme& s, const AugmentedRealVector& u,
                          const AugmentedRealVector& v, std::uint64_t K);

// Hash-family defaults used by the index and experiment layers when the
// caller does not override them.
inline constexpr std::uint32_t kDefaultL2AlshM = 3;
inline constexpr double kDefaultL2AlshU = 0.83;
inline constexpr double kDefaultL2AlshBucketWidth = 2.5;
inline constexpr std::uint32_t kDefaultSignAlshM = 2;
inline constexpr double kDefaultSignAlshU = 0.75;

}  // namespace amh
