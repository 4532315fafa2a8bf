#pragma once

// (K, L)-bucketed search index: L hash tables keyed by 64-bit folds of K
// concatenated hash values of the transformed record; queries return the
// union of matching buckets.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amh/alsh_transforms.hpp"
#include "amh/hash_families.hpp"
#include "amh/sparse_data.hpp"

namespace amh {

enum class TransformKind { None, MhAlsh, L2Alsh, SignAlsh };

struct IndexConfig {
  std::uint32_t K = 1;
  std::uint32_t L = 1;
  HashScheme scheme;
  TransformKind transform = TransformKind::None;
  std::uint32_t universe_dim = 1;  // D of the indexed collection
  // MhAlsh: padding budget M (must cover every indexed cardinality).
  std::uint32_t padding_budget = 1;
  // L2Alsh / SignAlsh: augmentation depth, scale, and norm bound.
  std::uint32_t augment_m = kDefaultL2AlshM;
  double augment_U = kDefaultL2AlshU;
  double norm_bound = 1.0;

  // Enforces K, L >= 1 and scheme/transform compatibility: None and MhAlsh
  // pair with Minhash (MhAlsh also with CWS via the weighted padding);
  // L2Alsh pairs with L2LSH; SignAlsh pairs with SRP.
  void validate() const;

  bool operator==(const IndexConfig&) const = default;
};

// Table key of transformed input v for table j: the fold of hash values at
// indices t = j*K + k for k in [0, K), so the K*L evaluations are
// independent draws of the underlying family.
std::uint64_t fold_hash(std::uint64_t acc, HashValue h);
std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const SparseBinarySet& v);        // transform None
std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const PaddedBinarySet& v);        // MhAlsh + Minhash
std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const WeightedSparseVector& v);   // MhAlsh + CWS
std::uint64_t bucket_key(const IndexConfig& config, std::uint32_t j,
                         const AugmentedRealVector& v);    // L2Alsh / SignAlsh

class LshIndex {
 public:
  using Table = std::unordered_map<std::uint64_t, std::vector<std::int64_t>>;

  explicit LshIndex(IndexConfig config);

  const IndexConfig& config() const { return config_; }
  std::size_t record_count() const { return ids_.size(); }
  const std::vector<Table>& tables() const { return tables_; }

  // Applies the data-side transform and appends the id to one bucket per
  // table.  Throws on duplicate ids; transform violations (cardinality over
  // the padding budget) surface as errors naming the record id.
  void insert_record(std::int64_t id, const SparseBinarySet& x);

  struct QueryResult {
    std::vector<std::int64_t> ids;  // deduplicated, ascending
    std::uint64_t raw_count = 0;    // bucket-size sum before deduplication
  };

  // Applies the query-side transform and unions the L matching buckets.
  QueryResult query(const SparseBinarySet& q) const;

  bool structurally_equal(const LshIndex& other) const;

 private:
  friend LshIndex load_index(const std::string& path);

  void adopt_state(std::vector<Table> tables, std::unordered_set<std::int64_t> ids) {
    tables_ = std::move(tables);
    ids_ = std::move(ids);
  }

  IndexConfig config_;
  std::vector<Table> tables_;
  std::unordered_set<std::int64_t> ids_;
};

// Builds an index over every record of the train dataset (insertion in
// record order; rebuilding from the same inputs is structurally identical).
LshIndex build_index(const IndexConfig& config, const Dataset& train);

// Flat binary persistence: version byte, little-endian config header, record
// count, then per table the (key, id) pairs sorted by key (ties keep bucket
// order).  load_index rejects unknown versions and truncated payloads.
void save_index(const LshIndex& index, const std::string& path);
LshIndex load_index(const std::string& path);

}  // namespace amh
