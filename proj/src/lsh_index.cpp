#include "amh/lsh_index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "amh/errors.hpp"
#include "amh/rng.hpp"

namespace amh {

namespace {

constexpr std::uint8_t kFormatVersion = 1;

// Query-side norm bound: queries are not part of the indexed collection, so
// a query longer than the collection's norm bound scales against its own
// norm instead of being rejected; ranking by inner product is unaffected.
double query_norm_bound(const IndexConfig& c, const SparseBinarySet& q) {
  double norm = std::sqrt(static_cast<double>(q.cardinality()));
  return std::max(c.norm_bound, norm);
}

void append_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void append_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void append_f64(std::string& out, double v) { append_u64(out, std::bit_cast<std::uint64_t>(v)); }

void append_i64(std::string& out, std::int64_t v) {
  append_u64(out, static_cast<std::uint64_t>(v));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[off_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data_[off_++])) << (8 * i);
    }
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data_[off_++])) << (8 * i);
    }
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
  bool exhausted() const { return off_ == data_.size(); }

 private:
  void need(std::size_t n) {
    if (off_ + n > data_.size()) throw IoError("index payload is truncated");
  }
  std::string data_;
  std::size_t off_ = 0;
};

}  // namespace

void IndexConfig::validate() const {
  if (K == 0 || L == 0) throw ArgumentError("K and L must both be at least 1");
  if (universe_dim == 0) throw ArgumentError("universe dimension must be positive");
  switch (transform) {
    case TransformKind::None:
      if (scheme.kind != SchemeKind::Minhash) {
        throw ArgumentError("an untransformed index requires a minwise scheme");
      }
      break;
    case TransformKind::MhAlsh:
      if (scheme.kind != SchemeKind::Minhash && scheme.kind != SchemeKind::CWS) {
        throw ArgumentError(
            "the padding transform requires a minwise or weighted-sampling scheme");
      }
      if (padding_budget == 0) throw ArgumentError("padding budget M must be at least 1");
      break;
    case TransformKind::L2Alsh:
      if (scheme.kind != SchemeKind::L2LSH) {
        throw ArgumentError("the Euclidean augmentation requires an L2 bucket scheme");
      }
      break;
    case TransformKind::SignAlsh:
      if (scheme.kind != SchemeKind::SRP) {
        throw ArgumentError("the sign augmentation requires a sign-projection scheme");
      }
      break;
  }
  if (transform == TransformKind::L2Alsh || transform == TransformKind::SignAlsh) {
    if (augment_m == 0) throw ArgumentError("augmentation depth m must be at least 1");
    if (!(augment_U > 0.0 && augment_U < 1.0)) {
      throw ArgumentError("scale U must lie strictly in (0, 1)");
    }
    if (!(norm_bound > 0.0)) throw ArgumentError("norm bound V must be positive");
  }
}

std::uint64_t fold_hash(std::uint64_t acc, HashValue h) {
  return rng::mix64(acc ^ h.value);
}

namespace {

template <typename Hasher>
std::uint64_t fold_key(const IndexConfig& config, std::uint32_t j, Hasher&& hash_at) {
  if (j >= config.L) throw ArgumentError("table index exceeds L");
  std::uint64_t acc = rng::kGolden;
  std::uint64_t base = static_cast<std::uint64_t>(j) * config.K;
  for (std::uint32_t k = 0; k < config.K; ++k) {
    acc = fold_hash(acc, hash_at(base + k));
  }
  return acc;
}

}  // namespace

std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const SparseBinarySet& v) {
  return fold_key(config, j, [&](std::uint64_t t) { return minhash(config.scheme, t, v); });
}

std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const PaddedBinarySet& v) {
  return fold_key(config, j,
                  [&](std::uint64_t t) { return padded_minhash(config.scheme, t, v); });
}

std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const WeightedSparseVector& v) {
  return fold_key(config, j, [&](std::uint64_t t) { return cws_hash(config.scheme, t, v); });
}

std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const AugmentedRealVector& v) {
  RealVectorView view = v.view();
  if (config.scheme.kind == SchemeKind::L2LSH) {
    return fold_key(config, j,
                    [&](std::uint64_t t) { return l2lsh_hash(config.scheme, t, view); });
  }
  return fold_key(config, j,
                  [&](std::uint64_t t) { return srp_hash(config.scheme, t, view); });
}

LshIndex::LshIndex(IndexConfig config) : config_(std::move(config)) {
  config_.validate();
  tables_.resize(config_.L);
}

void LshIndex::insert_record(std::int64_t id, const SparseBinarySet& x) {
  if (ids_.count(id)) {
    throw ValidationError("record id " + std::to_string(id) + " is already indexed");
  }
  std::vector<std::uint64_t> keys(config_.L);
  try {
    switch (config_.transform) {
      case TransformKind::None: {
        for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, x);
        break;
      }
      case TransformKind::MhAlsh: {
        if (config_.scheme.kind == SchemeKind::Minhash) {
          PaddedBinarySet p = transform_mh(x, config_.universe_dim, config_.padding_budget,
                                           MhRole::DataDouble);
          for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, p);
        } else {
          WeightedSparseVector w = transform_weighted(
              x, config_.universe_dim, config_.padding_budget, WeightedRole::DataTriple);
          for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, w);
        }
        break;
      }
      case TransformKind::L2Alsh: {
        AugmentedRealVector a =
            transform_l2alsh(x, config_.universe_dim, AugmentedRole::Data,
                             config_.augment_m, config_.augment_U, config_.norm_bound);
        for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, a);
        break;
      }
      case TransformKind::SignAlsh: {
        AugmentedRealVector a =
            transform_signalsh(x, config_.universe_dim, AugmentedRole::Data,
                               config_.augment_m, config_.augment_U, config_.norm_bound);
        for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, a);
        break;
      }
    }
  } catch (const CardinalityExceedsBudgetError& e) {
    throw CardinalityExceedsBudgetError("record " + std::to_string(id) + ": " + e.what());
  }
  ids_.insert(id);
  for (std::uint32_t j = 0; j < config_.L; ++j) {
    tables_[j][keys[j]].push_back(id);
  }
}

LshIndex::QueryResult LshIndex::query(const SparseBinarySet& q) const {
  std::vector<std::uint64_t> keys(config_.L);
  switch (config_.transform) {
    case TransformKind::None: {
      for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, q);
      break;
    }
    case TransformKind::MhAlsh: {
      if (config_.scheme.kind == SchemeKind::Minhash) {
        PaddedBinarySet p = transform_mh(q, config_.universe_dim, config_.padding_budget,
                                         MhRole::QueryDouble);
        for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, p);
      } else {
        WeightedSparseVector w = transform_weighted(
            q, config_.universe_dim, config_.padding_budget, WeightedRole::QueryTriple);
        for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, w);
      }
      break;
    }
    case TransformKind::L2Alsh: {
      AugmentedRealVector a =
          transform_l2alsh(q, config_.universe_dim, AugmentedRole::Query, config_.augment_m,
                           config_.augment_U, query_norm_bound(config_, q));
      for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, a);
      break;
    }
    case TransformKind::SignAlsh: {
      AugmentedRealVector a = transform_signalsh(q, config_.universe_dim,
                                                 AugmentedRole::Query, config_.augment_m,
                                                 config_.augment_U,
                                                 query_norm_bound(config_, q));
      for (std::uint32_t j = 0; j < config_.L; ++j) keys[j] = bucket_key(config_, j, a);
      break;
    }
  }
  QueryResult result;
  std::vector<std::int64_t> found;
  for (std::uint32_t j = 0; j < config_.L; ++j) {
    auto it = tables_[j].find(keys[j]);
    if (it == tables_[j].end()) continue;
    result.raw_count += it->second.size();
    found.insert(found.end(), it->second.begin(), it->second.end());
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  result.ids = std::move(found);
  return result;
}

bool LshIndex::structurally_equal(const LshIndex& other) const {
  return config_ == other.config_ && tables_ == other.tables_ && ids_ == other.ids_;
}

LshIndex build_index(const IndexConfig& config, const Dataset& train) {
  LshIndex index(config);
  for (const auto& r : train.records()) {
    index.insert_record(r.id, r.set);
  }
  return index;
}

void save_index(const LshIndex& index, const std::string& path) {
  const IndexConfig& c = index.config();
  std::string out;
  append_u8(out, kFormatVersion);
  append_u32(out, c.K);
  append_u32(out, c.L);
  append_u8(out, static_cast<std::uint8_t>(c.scheme.kind));
  append_u64(out, c.scheme.master_seed);
  append_u64(out, c.scheme.sample_range);
  append_f64(out, c.scheme.bucket_width);
  append_u64(out, c.scheme.effective_dim);
  append_u8(out, static_cast<std::uint8_t>(c.transform));
  append_u32(out, c.universe_dim);
  append_u32(out, c.padding_budget);
  append_u32(out, c.augment_m);
  append_f64(out, c.augment_U);
  append_f64(out, c.norm_bound);
  append_u64(out, index.record_count());
  for (const auto& table : index.tables()) {
    std::vector<const LshIndex::Table::value_type*> buckets;
    buckets.reserve(table.size());
    std::uint64_t pair_count = 0;
    for (const auto& entry : table) {
      buckets.push_back(&entry);
      pair_count += entry.second.size();
    }
    std::sort(buckets.begin(), buckets.end(),
              [](const auto* a, const auto* b) { return a->first < b->first; });
    append_u64(out, pair_count);
    for (const auto* entry : buckets) {
      for (std::int64_t id : entry->second) {
        append_u64(out, entry->first);
        append_i64(out, id);
      }
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

LshIndex load_index(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << f.rdbuf();
  Reader in(buf.str());
  std::uint8_t version = in.u8();
  if (version != kFormatVersion) {
    throw IoError("unsupported index format version " + std::to_string(version));
  }
  IndexConfig c;
  c.K = in.u32();
  c.L = in.u32();
  std::uint8_t kind = in.u8();
  if (kind > static_cast<std::uint8_t>(SchemeKind::CWS)) {
    throw IoError("corrupt index payload: unknown scheme kind");
  }
  c.scheme.kind = static_cast<SchemeKind>(kind);
  c.scheme.master_seed = in.u64();
  c.scheme.sample_range = in.u64();
  c.scheme.bucket_width = in.f64();
  c.scheme.effective_dim = in.u64();
  std::uint8_t transform = in.u8();
  if (transform > static_cast<std::uint8_t>(TransformKind::SignAlsh)) {
    throw IoError("corrupt index payload: unknown transform kind");
  }
  c.transform = static_cast<TransformKind>(transform);
  c.universe_dim = in.u32();
  c.padding_budget = in.u32();
  c.augment_m = in.u32();
  c.augment_U = in.f64();
  c.norm_bound = in.f64();
  std::uint64_t record_count = in.u64();

  LshIndex index(c);
  // Rebuild tables directly; bucket order inside equal keys is file order,
  // which save_index wrote in insertion order.
  std::vector<LshIndex::Table> tables(c.L);
  std::unordered_set<std::int64_t> ids;
  for (std::uint32_t j = 0; j < c.L; ++j) {
    std::uint64_t pair_count = in.u64();
    if (pair_count != record_count) {
      throw IoError("corrupt index payload: table size disagrees with record count");
    }
    for (std::uint64_t n = 0; n < pair_count; ++n) {
      std::uint64_t key = in.u64();
      std::int64_t id = in.i64();
      tables[j][key].push_back(id);
      if (j == 0) {
        if (!ids.insert(id).second) {
          throw IoError("corrupt index payload: duplicate id within a table");
        }
      }
    }
  }
  if (!in.exhausted()) throw IoError("corrupt index payload: trailing bytes");

  LshIndex result(c);
  result.adopt_state(std::move(tables), std::move(ids));
  return result;
}

}  // namespace amh
