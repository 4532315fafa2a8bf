#pragma once

// Experiment harness: brute-force gold standards, the hash-quality ranking
// experiment (precision/recall against top-T containment neighbors), the
// (K, L) bucketing sweep (fraction of the collection scanned vs. recall),
// and a seeded synthetic corpus generator for benchmarking the schemes.

#include <cstdint>
#include <string>
#include <vector>

#include "amh/alsh_transforms.hpp"
#include "amh/common.hpp"
#include "amh/sparse_data.hpp"

namespace amh {

// ---------------------------------------------------------------------------
// Gold standard
// ---------------------------------------------------------------------------

struct GoldEntry {
  std::int64_t id = 0;         // train record id
  std::uint32_t overlap = 0;   // binary inner product a = |x ∩ q|
};

// Per query: the top-T train records by overlap (descending, ties broken by
// ascending id), length min(T, n_train).
struct GoldStandard {
  std::vector<std::vector<GoldEntry>> per_query;
};

// Exact brute-force top-T inner-product neighbors for every query.  For a
// fixed query, ordering by overlap equals ordering by containment a/f_q.
GoldStandard gold_standard(const Dataset& train, const Dataset& queries,
                           std::uint32_t T);

// ---------------------------------------------------------------------------
// Scheme selection
// ---------------------------------------------------------------------------

enum class ExperimentScheme {
  Minhash,   // plain minwise hashing of the raw sets
  MhAlsh,    // asymmetric padding to budget M, then minwise hashing
  L2Alsh,    // norm-scaling Euclidean augmentation, then quantized projections
  SignAlsh,  // norm-scaling sign augmentation, then sign projections
};

// Canonical labels: "minhash", "mh-alsh", "l2-alsh", "sign-alsh".
std::string experiment_scheme_label(ExperimentScheme scheme);
ExperimentScheme parse_experiment_scheme(const std::string& label);

struct ExperimentOptions {
  std::uint64_t seed = kDefaultSeed;
  // Padding budget M; 0 derives the maximum train cardinality.
  std::uint32_t budget_override = 0;
  // Euclidean augmentation parameters (depth m, scale U, bucket width r).
  std::uint32_t l2_m = kDefaultL2AlshM;
  double l2_U = kDefaultL2AlshU;
  double l2_r = kDefaultL2AlshBucketWidth;
  // Sign augmentation parameters.
  std::uint32_t sign_m = kDefaultSignAlshM;
  double sign_U = kDefaultSignAlshU;
};

// Number of t < K hash agreements between the query-transformed q and the
// data-transformed x under the chosen scheme (identity transforms for plain
// minhash).  budget is the padding budget M for MhAlsh and sets the norm
// bound V = sqrt(budget) for the augmentation schemes.
std::uint32_t count_matches(ExperimentScheme scheme, const ExperimentOptions& opt,
                            std::uint32_t universe_dim, std::uint32_t budget,
                            const SparseBinarySet& q, const SparseBinarySet& x,
                            std::uint32_t K);

// ---------------------------------------------------------------------------
// Ranking experiment
// ---------------------------------------------------------------------------

struct RankingPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct RankingCurve {
  ExperimentScheme scheme = ExperimentScheme::Minhash;
  std::uint32_t K = 0;
  std::vector<RankingPoint> points;  // one per recall level, ascending
};

struct RankingReport {
  std::vector<RankingCurve> curves;  // schemes × K values, in input order
};

// The fixed recall grid {0.01, 0.02, …, 1.00} used by both experiments.
std::vector<double> recall_levels();

// Precision at the first crossing of each recall level while walking a
// ranked list: entry p of gold_in_rank_order says whether the p-th ranked
// record is one of the gold_count gold neighbors.  Exposed for testing.
std::vector<double> precision_at_levels(const std::vector<bool>& gold_in_rank_order,
                                        std::uint32_t gold_count);

// For every scheme and K: hash all records, rank train records per query by
// match count (descending, ties by ascending id), walk the ranking, and
// average per-level precision across queries.
RankingReport ranking_experiment(const Dataset& train, const Dataset& queries,
                                 const std::vector<ExperimentScheme>& schemes,
                                 const std::vector<std::uint32_t>& k_list,
                                 std::uint32_t T, const ExperimentOptions& opt);

// CSV with header "scheme,K,recall,precision".
std::string ranking_to_csv(const RankingReport& report);

// ---------------------------------------------------------------------------
// Bucketing experiment
// ---------------------------------------------------------------------------

struct BucketingRow {
  ExperimentScheme scheme = ExperimentScheme::Minhash;
  std::uint32_t T = 0;
  double recall_level = 0.0;
  double fraction = 0.0;  // minimal mean deduplicated fraction scanned
  std::uint32_t best_k = 0;
  std::uint32_t best_l = 0;
};

// One sweep point per (scheme, K, L); kept alongside the per-level selection
// so reports expose both the deduplicated fraction and the raw (pre-dedup)
// candidate counts.
struct BucketingSweepPoint {
  ExperimentScheme scheme = ExperimentScheme::Minhash;
  std::uint32_t K = 0;
  std::uint32_t L = 0;
  double mean_fraction = 0.0;          // deduplicated candidates / n_train
  double mean_raw_count = 0.0;         // bucket-size sum before deduplication
  std::vector<double> mean_recall;     // aligned with the T list
};

struct BucketingReport {
  std::vector<std::uint32_t> t_list;
  std::vector<BucketingRow> rows;            // only achievable levels
  std::vector<BucketingSweepPoint> sweep;    // schemes × K × L (K, L ascending)
};

// For every (scheme, K, L): index the train set, query everything, and record
// mean recall of the top-T gold neighbors among candidates plus the mean
// candidate fraction.  Then, per T and per recall level, select the (K, L)
// minimizing mean fraction subject to mean recall ≥ level (ties broken by
// smaller K, then smaller L); levels nobody reaches get no row.
BucketingReport bucketing_experiment(const Dataset& train, const Dataset& queries,
                                     const std::vector<ExperimentScheme>& schemes,
                                     const std::vector<std::uint32_t>& k_range,
                                     const std::vector<std::uint32_t>& l_range,
                                     const std::vector<std::uint32_t>& t_list,
                                     const ExperimentOptions& opt);

// CSV with header "scheme,T,recall_level,fraction,bestK,bestL".
std::string bucketing_to_csv(const BucketingReport& report);

// Desk-scale default grids and the full-scale variants behind the CLI flag.
std::vector<std::uint32_t> default_bucketing_k_range();  // 1..12
std::vector<std::uint32_t> default_bucketing_l_range();  // 1, 2, 4, …, 128
std::vector<std::uint32_t> full_bucketing_k_range();     // 1..40
std::vector<std::uint32_t> full_bucketing_l_range();     // 1..400

// ---------------------------------------------------------------------------
// Synthetic corpus
// ---------------------------------------------------------------------------

inline constexpr std::uint32_t kSyntheticUniverseDim = 50000;

struct SyntheticCorpus {
  Dataset train;
  Dataset queries;
};

// Clustered heavy-tailed binary corpus over a 50,000-dim universe: 12 topic
// clusters, a mixture of long member documents, partial core fragments,
// stopword-heavy tiny documents, and background noise, plus member-like
// query probes.  Cardinalities have std/mean ≥ 1, the regime where padding
// pays off.  Fully determined by the seed.
SyntheticCorpus synthetic_corpus(std::uint64_t seed, std::uint32_t n_train = 10000,
                                 std::uint32_t n_query = 200);

}  // namespace amh
