#include "amh/alsh_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "amh/errors.hpp"
#include "amh/kernels.hpp"
#include "amh/rng.hpp"

namespace amh {

namespace {

constexpr std::uint64_t kMaxU64 = std::numeric_limits<std::uint64_t>::max();

bool is_data(MhRole role) { return role == MhRole::DataPrime || role == MhRole::DataDouble; }

std::uint64_t minwise_key(const HashScheme& s, std::uint64_t t) {
  return rng::derive(rng::stream_key(s.master_seed, rng::kTagMinwise), t);
}

void check_augment_params(std::uint32_t m, double U, double V) {
  if (V <= 0.0) throw ArgumentError("norm bound V must be positive");
  if (!(U > 0.0 && U < 1.0)) throw ArgumentError("scale U must lie strictly in (0, 1)");
  if (m == 0) throw ArgumentError("augmentation depth m must be at least 1");
}

// Shared core of the two augmentations.
AugmentedRealVector augment(const std::uint32_t* idx, const double* val, std::size_t n,
                            std::uint32_t universe_dim, AugmentedRole role,
                            std::uint32_t m, double U, double V, bool sign_variant) {
  check_augment_params(m, U, V);
  if (n > 0 && idx[n - 1] >= universe_dim) {
    throw ArgumentError("vector index exceeds the universe dimension");
  }
  double scale = U / V;
  std::vector<std::uint32_t> body_idx(idx, idx + n);
  std::vector<double> body_val(n);
  double sq_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double x = (val ? val[j] : 1.0) * scale;
    body_val[j] = x;
    sq_norm += x * x;
  }
  if (sq_norm > U * U * (1.0 + 1e-9)) {
    throw ArgumentError("scaled norm exceeds U; V must bound the largest input norm");
  }
  // powers[i] = ||scaled v||^(2^(i+1)): squared norm, then repeated squaring.
  std::vector<double> powers(m);
  double p = sq_norm;
  for (std::uint32_t i = 0; i < m; ++i) {
    powers[i] = p;
    p = p * p;
  }
  std::vector<double> tail(2 * static_cast<std::size_t>(m));
  for (std::uint32_t i = 0; i < m; ++i) {
    double scaler = sign_variant ? 0.5 - powers[i] : powers[i];
    double filler = sign_variant ? 0.0 : 0.5;
    if (role == AugmentedRole::Data) {
      tail[i] = scaler;
      tail[m + i] = filler;
    } else {
      tail[i] = filler;
      tail[m + i] = scaler;
    }
  }
  return AugmentedRealVector(universe_dim, m, U, V, std::move(body_idx),
                             std::move(body_val), std::move(tail));
}

}  // namespace

PaddedBinarySet transform_mh(const SparseBinarySet& x, std::uint32_t universe_dim,
                             std::uint32_t M, MhRole role) {
  if (universe_dim == 0) throw ArgumentError("universe dimension must be positive");
  if (M == 0) throw ArgumentError("padding budget M must be at least 1");
  if (!x.empty() && x.max_index() >= universe_dim) {
    throw ArgumentError("set index exceeds the universe dimension");
  }
  auto f = static_cast<std::uint64_t>(x.cardinality());
  PaddedBinarySet p;
  p.base = x;
  p.universe_dim = universe_dim;
  p.budget = M;
  if (f > M) {
    if (is_data(role)) {
      throw CardinalityExceedsBudgetError(
          "data set cardinality " + std::to_string(f) + " exceeds padding budget " +
          std::to_string(M));
    }
    p.clamped = true;  // query-side: pad clamps to zero
    return p;
  }
  auto pad = static_cast<std::uint32_t>(M - f);
  switch (role) {
    case MhRole::DataPrime:
    case MhRole::DataDouble:
      p.pad1_count = pad;
      break;
    case MhRole::QueryPrime:
      break;  // appended zeros are invisible in the sparse view
    case MhRole::QueryDouble:
      p.pad2_count = pad;
      break;
  }
  return p;
}

HashValue padded_minhash(const HashScheme& s, std::uint64_t t, const PaddedBinarySet& p) {
  if (s.kind != SchemeKind::Minhash) {
    throw ArgumentError("padded_minhash called with a scheme of a different kind");
  }
  if (p.total_cardinality() == 0) {
    throw EmptyInputError("minhash of an empty padded set is undefined");
  }
  std::uint64_t key_t = minwise_key(s, t);
  std::uint64_t best =
      kernels::min_mix_indices(key_t, p.base.indices().data(), p.base.indices().size());
  std::uint64_t region1 = p.universe_dim;
  std::uint64_t region2 = static_cast<std::uint64_t>(p.universe_dim) + p.budget;
  best = std::min(best, kernels::min_mix_range(key_t, region1, region1 + p.pad1_count));
  best = std::min(best, kernels::min_mix_range(key_t, region2, region2 + p.pad2_count));
  return HashValue{best};
}

double estimate_collision(const HashScheme& s, const PaddedBinarySet& u,
                          const PaddedBinarySet& v, std::uint64_t K) {
  if (K == 0) throw ArgumentError("collision estimation requires at least one trial");
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < K; ++t) {
    if (padded_minhash(s, t, u) == padded_minhash(s, t, v)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(K);
}

PaddedMinhashCache::PaddedMinhashCache(const HashScheme& s, std::uint32_t universe_dim,
                                       std::uint32_t M, std::uint64_t t_count)
    : scheme_(s), dim_(universe_dim), budget_(M), t_count_(t_count) {
  if (s.kind != SchemeKind::Minhash) {
    throw ArgumentError("padded-minhash cache requires a minwise scheme");
  }
  if (M == 0) throw ArgumentError("padding budget M must be at least 1");
  std::size_t stride = static_cast<std::size_t>(M) + 1;
  prefix1_.resize(stride * t_count);
  prefix2_.resize(stride * t_count);
  std::uint64_t region1 = dim_;
  std::uint64_t region2 = static_cast<std::uint64_t>(dim_) + budget_;
  for (std::uint64_t t = 0; t < t_count; ++t) {
    std::uint64_t key_t = minwise_key(scheme_, t);
    std::uint64_t* row1 = prefix1_.data() + stride * t;
    std::uint64_t* row2 = prefix2_.data() + stride * t;
    row1[0] = kMaxU64;
    row2[0] = kMaxU64;
    std::uint64_t run1 = kMaxU64, run2 = kMaxU64;
    for (std::uint32_t len = 1; len <= M; ++len) {
      run1 = std::min(run1, rng::derive(key_t, region1 + len - 1));
      run2 = std::min(run2, rng::derive(key_t, region2 + len - 1));
      row1[len] = run1;
      row2[len] = run2;
    }
  }
}

HashValue PaddedMinhashCache::hash(const PaddedBinarySet& p, std::uint64_t t) const {
  if (p.universe_dim != dim_ || p.budget != budget_) {
    throw ArgumentError("padded set does not match the cache's universe/budget layout");
  }
  if (t >= t_count_) throw ArgumentError("hash index outside the cached range");
  if (p.total_cardinality() == 0) {
    throw EmptyInputError("minhash of an empty padded set is undefined");
  }
  std::uint64_t key_t = minwise_key(scheme_, t);
  std::uint64_t best =
      kernels::min_mix_indices(key_t, p.base.indices().data(), p.base.indices().size());
  std::size_t stride = static_cast<std::size_t>(budget_) + 1;
  best = std::min(best, prefix1_[stride * t + p.pad1_count]);
  best = std::min(best, prefix2_[stride * t + p.pad2_count]);
  return HashValue{best};
}

WeightedSparseVector transform_weighted(const SparseBinarySet& x,
                                        std::uint32_t universe_dim, std::uint32_t M,
                                        WeightedRole role, bool* clamped) {
  if (universe_dim == 0) throw ArgumentError("universe dimension must be positive");
  if (M == 0) throw ArgumentError("padding budget M must be at least 1");
  if (!x.empty() && x.max_index() >= universe_dim) {
    throw ArgumentError("set index exceeds the universe dimension");
  }
  if (clamped) *clamped = false;
  auto f = static_cast<std::uint64_t>(x.cardinality());
  double leftover;
  if (f > M) {
    if (role == WeightedRole::DataTriple) {
      throw CardinalityExceedsBudgetError(
          "data set cardinality " + std::to_string(f) + " exceeds padding budget " +
          std::to_string(M));
    }
    leftover = 0.0;
    if (clamped) *clamped = true;
  } else {
    leftover = static_cast<double>(M - f);
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(x.cardinality() + 1);
  for (std::uint32_t i : x.indices()) entries.emplace_back(i, 1.0);
  std::uint32_t reserved =
      role == WeightedRole::DataTriple ? universe_dim : universe_dim + 1;
  if (leftover > 0.0) entries.emplace_back(reserved, leftover);
  return WeightedSparseVector::from_pairs(std::move(entries));
}

WeightedSparseVector transform_weighted_intersection(const WeightedSparseVector& v,
                                                     std::uint32_t universe_dim,
                                                     double M_w, WeightedRole role,
                                                     bool* clamped) {
  if (universe_dim == 0) throw ArgumentError("universe dimension must be positive");
  if (!(M_w > 0.0)) throw ArgumentError("weight budget must be positive");
  if (!v.empty() && v.indices().back() >= universe_dim) {
    throw ArgumentError("vector index exceeds the universe dimension");
  }
  if (clamped) *clamped = false;
  double total = v.sum_weights();
  double leftover;
  if (total > M_w) {
    if (role == WeightedRole::DataTriple) {
      throw SumExceedsBudgetError("data vector total weight exceeds the budget");
    }
    leftover = 0.0;
    if (clamped) *clamped = true;
  } else {
    leftover = M_w - total;
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  entries.reserve(v.size() + 1);
  for (std::size_t j = 0; j < v.size(); ++j) {
    entries.emplace_back(v.indices()[j], v.weights()[j]);
  }
  std::uint32_t reserved =
      role == WeightedRole::DataTriple ? universe_dim : universe_dim + 1;
  if (leftover > 0.0) entries.emplace_back(reserved, leftover);
  return WeightedSparseVector::from_pairs(std::move(entries));
}

AugmentedRealVector::AugmentedRealVector(std::uint32_t universe_dim, std::uint32_t m,
                                         double U, double V,
                                         std::vector<std::uint32_t> body_idx,
                                         std::vector<double> body_val,
                                         std::vector<double> tail)
    : dim_(universe_dim),
      m_(m),
      U_(U),
      V_(V),
      body_idx_(std::move(body_idx)),
      body_val_(std::move(body_val)),
      tail_(std::move(tail)) {
  if (body_idx_.size() != body_val_.size()) {
    throw ArgumentError("augmented vector body index/value lengths differ");
  }
  if (tail_.size() != 2 * static_cast<std::size_t>(m_)) {
    throw ArgumentError("augmented vector tail must hold exactly 2m values");
  }
}

double AugmentedRealVector::body_squared_norm() const {
  double s = 0.0;
  for (double x : body_val_) s += x * x;
  return s;
}

RealVectorView AugmentedRealVector::view() const {
  RealVectorView v;
  v.idx = body_idx_.data();
  v.val = body_val_.data();
  v.n = body_idx_.size();
  v.tail_offset = dim_;
  v.tail = tail_.data();
  v.tail_n = tail_.size();
  return v;
}

AugmentedRealVector transform_l2alsh(const WeightedSparseVector& v,
                                     std::uint32_t universe_dim, AugmentedRole role,
                                     std::uint32_t m, double U, double V) {
  return augment(v.indices().data(), v.weights().data(), v.size(), universe_dim, role, m,
                 U, V, /*sign_variant=*/false);
}

AugmentedRealVector transform_l2alsh(const SparseBinarySet& x, std::uint32_t universe_dim,
                                     AugmentedRole role, std::uint32_t m, double U,
                                     double V) {
  return augment(x.indices().data(), nullptr, x.indices().size(), universe_dim, role, m,
                 U, V, /*sign_variant=*/false);
}

AugmentedRealVector transform_signalsh(const WeightedSparseVector& v,
                                       std::uint32_t universe_dim, AugmentedRole role,
                                       std::uint32_t m, double U, double V) {
  return augment(v.indices().data(), v.weights().data(), v.size(), universe_dim, role, m,
                 U, V, /*sign_variant=*/true);
}

AugmentedRealVector transform_signalsh(const SparseBinarySet& x,
                                       std::uint32_t universe_dim, AugmentedRole role,
                                       std::uint32_t m, double U, double V) {
  return augment(x.indices().data(), nullptr, x.indices().size(), universe_dim, role, m,
                 U, V, /*sign_variant=*/true);
}

double estimate_collision(const HashScheme& s, const AugmentedRealVector& u,
                          const AugmentedRealVector& v, std::uint64_t K) {
  if (K == 0) throw ArgumentError("collision estimation requires at least one trial");
  std::uint64_t hits = 0;
  RealVectorView uv = u.view();
  RealVectorView vv = v.view();
  switch (s.kind) {
    case SchemeKind::SRP:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (srp_hash(s, t, uv) == srp_hash(s, t, vv)) ++hits;
      }
      break;
    case SchemeKind::L2LSH:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (l2lsh_hash(s, t, uv) == l2lsh_hash(s, t, vv)) ++hits;
      }
      break;
    default:
      throw ArgumentError("augmented vectors require a projection-based scheme");
  }
  return static_cast<double>(hits) / static_cast<double>(K);
}

}  // namespace amh
