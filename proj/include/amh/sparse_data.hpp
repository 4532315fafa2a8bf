#pragma once

// Sparse binary sets over a finite universe [0, D), dataset containers with
// their summary statistics, text parsing, and seeded train/query splitting.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace amh {

// A subset of {0, ..., D-1}, stored as strictly increasing indices.
class SparseBinarySet {
 public:
  SparseBinarySet() = default;

  // Validates that `idx` is strictly increasing; throws ValidationError.
  static SparseBinarySet from_sorted_unique(std::vector<std::uint32_t> idx);

  // Sorts and removes duplicates.
  static SparseBinarySet from_unsorted(std::vector<std::uint32_t> idx);

  std::size_t cardinality() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  bool contains(std::uint32_t i) const;
  // Largest index; requires a non-empty set.
  std::uint32_t max_index() const;
  const std::vector<std::uint32_t>& indices() const { return idx_; }

  bool operator==(const SparseBinarySet&) const = default;

 private:
  std::vector<std::uint32_t> idx_;
};

// |x ∩ y| by sorted merge.
std::uint32_t intersection_size(const SparseBinarySet& x, const SparseBinarySet& y);

// |x ∪ y| = |x| + |y| - |x ∩ y|.
std::uint64_t union_size(const SparseBinarySet& x, const SparseBinarySet& y);

// |x ∩ y| / |x ∪ y|; 1.0 when both sets are empty.
double resemblance(const SparseBinarySet& x, const SparseBinarySet& y);

struct DatasetRecord {
  std::int64_t id = 0;
  SparseBinarySet set;
};

// A collection of records over a shared universe.  Invariants: ids are
// unique, every index is < universe_dim, and max_cardinality tracks the
// largest record size (0 when there are no records).
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::uint32_t universe_dim, std::vector<DatasetRecord> records);

  std::uint32_t universe_dim() const { return dim_; }
  std::uint32_t max_cardinality() const { return max_card_; }
  std::size_t size() const { return records_.size(); }
  const std::vector<DatasetRecord>& records() const { return records_; }

  void add_record(std::int64_t id, SparseBinarySet set);

 private:
  std::uint32_t dim_ = 1;
  std::uint32_t max_card_ = 0;
  std::vector<DatasetRecord> records_;
  std::unordered_set<std::int64_t> ids_;
};

enum class InputFormat { IndexList, SvmSparse };

struct ParseOptions {
  InputFormat format = InputFormat::IndexList;
  // When set, any nonzero feature value marks the index as present.  When
  // unset, values must be exactly 0 (absent) or 1 (present); anything else is
  // a ValidationError.  Only meaningful for SvmSparse input.
  bool binarize = false;
  // Universe dimension; defaults to 1 + the largest index seen (1 for an
  // input with no indices).  Must cover every index when given.
  std::optional<std::uint32_t> dim_override;
};

// Parse dataset text.  IndexList: one record per line of whitespace-separated
// indices (duplicates collapsed, order free).  SvmSparse: a leading label
// token (ignored) followed by 1-based index:value pairs.  Blank lines are
// skipped in both formats; record ids are the 0-based order of appearance.
Dataset parse_dataset_text(const std::string& text, const ParseOptions& opts = {});

// File variant of parse_dataset_text; throws IoError when unreadable.
Dataset parse_dataset(const std::string& path, const ParseOptions& opts = {});

// Serialize as IndexList text, one record per line in stored order.  Records
// must be non-empty (an empty set has no IndexList representation).
std::string dataset_to_index_list(const Dataset& d);
void write_dataset(const Dataset& d, const std::string& path);

struct DatasetStats {
  std::size_t n_records = 0;
  std::uint32_t universe_dim = 1;
  double mean_cardinality = 0.0;
  double std_cardinality = 0.0;  // population standard deviation
  std::uint32_t max_cardinality = 0;
};

DatasetStats compute_stats(const Dataset& d);

// Header "n,D,mean,std,M" plus one row.
std::string stats_to_csv(const DatasetStats& s);

struct PartitionResult {
  Dataset train;
  Dataset query;
};

// Seeded shuffle of record order; the first n_query shuffled records become
// the query split and the rest the train split.  Records keep their ids, both
// splits keep the universe dimension, and each split recomputes its own
// max_cardinality.  Requires 0 < n_query < d.size().
PartitionResult partition_dataset(const Dataset& d, std::size_t n_query,
                                  std::uint64_t seed);

}  // namespace amh
