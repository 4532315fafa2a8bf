#include "amh/hash_families.hpp"

#include <cmath>
#include <limits>

#include "amh/errors.hpp"
#include "amh/kernels.hpp"
#include "amh/rng.hpp"

namespace amh {

namespace {

void require_kind(const HashScheme& s, SchemeKind expected, const char* op) {
  if (s.kind != expected) {
    throw ArgumentError(std::string(op) + " called with a scheme of a different kind");
  }
}

double gaussian_projection(std::uint64_t key_t, const RealVectorView& v) {
  double acc = 0.0;
  for (std::size_t j = 0; j < v.n; ++j) {
    double value = v.val ? v.val[j] : 1.0;
    if (value == 0.0) continue;
    acc += value * rng::to_gaussian(rng::derive(key_t, v.idx[j]));
  }
  for (std::size_t j = 0; j < v.tail_n; ++j) {
    double value = v.tail[j];
    if (value == 0.0) continue;
    acc += value * rng::to_gaussian(rng::derive(key_t, v.tail_offset + j));
  }
  return acc;
}

}  // namespace

RealVectorView as_view(const SparseBinarySet& x) {
  RealVectorView v;
  v.idx = x.indices().data();
  v.val = nullptr;
  v.n = x.indices().size();
  return v;
}

RealVectorView as_view(const WeightedSparseVector& w) {
  RealVectorView v;
  v.idx = w.indices().data();
  v.val = w.weights().data();
  v.n = w.indices().size();
  return v;
}

HashValue minhash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x) {
  require_kind(s, SchemeKind::Minhash, "minhash");
  if (x.empty()) throw EmptyInputError("minhash of an empty set is undefined");
  std::uint64_t key_t = rng::derive(rng::stream_key(s.master_seed, rng::kTagMinwise), t);
  return HashValue{kernels::min_mix_indices(key_t, x.indices().data(), x.indices().size())};
}

HashValue sample_hash_hs(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x,
                         std::uint64_t D, std::uint64_t entity_id) {
  require_kind(s, SchemeKind::SampleHS, "sample_hash_hs");
  if (D == 0) throw ArgumentError("sample_hash_hs requires a positive universe size");
  if (s.sample_range == 0) {
    throw ArgumentError("sample_hash_hs requires a positive fallback range");
  }
  std::uint64_t coord =
      rng::bounded(rng::derive(rng::stream_key(s.master_seed, rng::kTagSampleCoord), t), D);
  if (coord <= 0xFFFFFFFFULL && x.contains(static_cast<std::uint32_t>(coord))) {
    return HashValue{0};
  }
  std::uint64_t fb_key =
      rng::derive(rng::stream_key(s.master_seed, rng::kTagSampleFallback), t);
  return HashValue{1 + rng::bounded(rng::derive(fb_key, entity_id), s.sample_range)};
}

HashValue srp_hash(const HashScheme& s, std::uint64_t t, const RealVectorView& v) {
  require_kind(s, SchemeKind::SRP, "srp_hash");
  std::uint64_t key_t = rng::derive(rng::stream_key(s.master_seed, rng::kTagSrpProj), t);
  return HashValue{gaussian_projection(key_t, v) >= 0.0 ? 1ULL : 0ULL};
}

HashValue srp_hash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x) {
  return srp_hash(s, t, as_view(x));
}

HashValue srp_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v) {
  return srp_hash(s, t, as_view(v));
}

HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const RealVectorView& v) {
  require_kind(s, SchemeKind::L2LSH, "l2lsh_hash");
  if (!(s.bucket_width > 0.0)) {
    throw ArgumentError("l2lsh_hash requires a positive bucket width");
  }
  std::uint64_t key_t = rng::derive(rng::stream_key(s.master_seed, rng::kTagL2Proj), t);
  double proj = gaussian_projection(key_t, v);
  double b = s.bucket_width *
             rng::to_unit(rng::derive(rng::stream_key(s.master_seed, rng::kTagL2Offset), t));
  auto bucket = static_cast<std::int64_t>(std::floor((proj + b) / s.bucket_width));
  return HashValue{static_cast<std::uint64_t>(bucket)};
}

HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const SparseBinarySet& x) {
  return l2lsh_hash(s, t, as_view(x));
}

HashValue l2lsh_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v) {
  return l2lsh_hash(s, t, as_view(v));
}

HashValue cws_hash(const HashScheme& s, std::uint64_t t, const WeightedSparseVector& v) {
  require_kind(s, SchemeKind::CWS, "cws_hash");
  if (v.empty()) throw EmptyInputError("weighted sampling of an empty vector is undefined");
  std::uint64_t key_t =
      rng::derive(rng::stream_key(s.master_seed, rng::kTagConsistentWeighted), t);
  double best_a = std::numeric_limits<double>::infinity();
  std::uint32_t best_idx = 0;
  std::int64_t best_level = 0;
  const auto& idx = v.indices();
  const auto& wts = v.weights();
  for (std::size_t j = 0; j < idx.size(); ++j) {
    double w = wts[j];
    std::uint64_t elem_key = rng::derive(key_t, idx[j]);
    double u1 = rng::to_unit_open(rng::derive(elem_key, 1));
    double u2 = rng::to_unit_open(rng::derive(elem_key, 2));
    double u3 = rng::to_unit_open(rng::derive(elem_key, 3));
    double u4 = rng::to_unit_open(rng::derive(elem_key, 4));
    double beta = rng::to_unit(rng::derive(elem_key, 5));
    double r = -std::log(u1 * u2);  // Gamma(2,1)
    double c = -std::log(u3 * u4);  // Gamma(2,1)
    double level = std::floor(std::log(w) / r + beta);
    double y = std::exp(r * (level - beta));
    double a = c / (y * std::exp(r));
    if (a < best_a) {
      best_a = a;
      best_idx = idx[j];
      best_level = static_cast<std::int64_t>(level);
    }
  }
  std::uint64_t packed = (static_cast<std::uint64_t>(best_idx) << 32) |
                         static_cast<std::uint32_t>(best_level);
  return HashValue{packed};
}

double estimate_collision(const HashScheme& s, const SparseBinarySet& u,
                          const SparseBinarySet& v, std::uint64_t K) {
  if (K == 0) throw ArgumentError("collision estimation requires at least one trial");
  std::uint64_t hits = 0;
  switch (s.kind) {
    case SchemeKind::Minhash:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (minhash(s, t, u) == minhash(s, t, v)) ++hits;
      }
      break;
    case SchemeKind::SampleHS:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (sample_hash_hs(s, t, u, s.effective_dim, 0) ==
            sample_hash_hs(s, t, v, s.effective_dim, 1)) {
          ++hits;
        }
      }
      break;
    case SchemeKind::SRP:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (srp_hash(s, t, u) == srp_hash(s, t, v)) ++hits;
      }
      break;
    case SchemeKind::L2LSH:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (l2lsh_hash(s, t, u) == l2lsh_hash(s, t, v)) ++hits;
      }
      break;
    case SchemeKind::CWS: {
      auto unit = [](const SparseBinarySet& x) {
        std::vector<std::pair<std::uint32_t, double>> entries;
        entries.reserve(x.cardinality());
        for (std::uint32_t i : x.indices()) entries.emplace_back(i, 1.0);
        return WeightedSparseVector::from_pairs(std::move(entries));
      };
      return estimate_collision(s, unit(u), unit(v), K);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(K);
}

double estimate_collision(const HashScheme& s, const WeightedSparseVector& u,
                          const WeightedSparseVector& v, std::uint64_t K) {
  if (K == 0) throw ArgumentError("collision estimation requires at least one trial");
  std::uint64_t hits = 0;
  switch (s.kind) {
    case SchemeKind::CWS:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (cws_hash(s, t, u) == cws_hash(s, t, v)) ++hits;
      }
      break;
    case SchemeKind::SRP:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (srp_hash(s, t, u) == srp_hash(s, t, v)) ++hits;
      }
      break;
    case SchemeKind::L2LSH:
      for (std::uint64_t t = 0; t < K; ++t) {
        if (l2lsh_hash(s, t, u) == l2lsh_hash(s, t, v)) ++hits;
      }
      break;
    default:
      throw ArgumentError(
          "set-based schemes cannot estimate collisions of weighted vectors");
  }
  return static_cast<double>(hits) / static_cast<double>(K);
}

}  // namespace amh
