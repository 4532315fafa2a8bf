#include "amh/eval_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "amh/csv.hpp"
#include "amh/errors.hpp"
#include "amh/hash_families.hpp"
#include "amh/parallel.hpp"
#include "amh/rng.hpp"

namespace amh {

namespace {

constexpr std::uint32_t kNoRank = 0xFFFFFFFFu;

void require_matching_dims(const Dataset& train, const Dataset& queries) {
  if (train.universe_dim() != queries.universe_dim()) {
    throw ArgumentError("train and query datasets must share a universe dimension");
  }
}

double binary_norm(const SparseBinarySet& x) {
  return std::sqrt(static_cast<double>(x.cardinality()));
}

// Evaluates one scheme's hash sequence for data- or query-side inputs.  The
// MhAlsh path goes through the prefix cache so repeated hashing costs O(f)
// per hash instead of O(f + M).
class SchemeHasher {
 public:
  SchemeHasher(ExperimentScheme scheme, const ExperimentOptions& opt,
               std::uint32_t universe_dim, std::uint32_t budget, std::uint64_t t_count)
      : scheme_(scheme), dim_(universe_dim), budget_(budget) {
    hs_.master_seed = opt.seed;
    switch (scheme) {
      case ExperimentScheme::Minhash:
        hs_.kind = SchemeKind::Minhash;
        break;
      case ExperimentScheme::MhAlsh:
        hs_.kind = SchemeKind::Minhash;
        cache_.emplace(hs_, universe_dim, budget, t_count);
        break;
      case ExperimentScheme::L2Alsh:
        hs_.kind = SchemeKind::L2LSH;
        hs_.bucket_width = opt.l2_r;
        m_ = opt.l2_m;
        u_ = opt.l2_U;
        v_ = std::sqrt(static_cast<double>(budget));
        break;
      case ExperimentScheme::SignAlsh:
        hs_.kind = SchemeKind::SRP;
        m_ = opt.sign_m;
        u_ = opt.sign_U;
        v_ = std::sqrt(static_cast<double>(budget));
        break;
    }
  }

  // Fills out[0..n) with hash values t_begin .. t_begin+n-1 of the
  // transformed input.
  void row(const SparseBinarySet& x, bool query_side, std::uint64_t t_begin,
           std::uint64_t n, std::uint64_t* out) const {
    switch (scheme_) {
      case ExperimentScheme::Minhash: {
        for (std::uint64_t i = 0; i < n; ++i) out[i] = minhash(hs_, t_begin + i, x).value;
        break;
      }
      case ExperimentScheme::MhAlsh: {
        PaddedBinarySet p = transform_mh(
            x, dim_, budget_, query_side ? MhRole::QueryDouble : MhRole::DataDouble);
        for (std::uint64_t i = 0; i < n; ++i) out[i] = cache_->hash(p, t_begin + i).value;
        break;
      }
      case ExperimentScheme::L2Alsh: {
        // Queries are not part of the collection: a query longer than the
        // norm bound scales against its own norm instead of erroring.
        double v = query_side ? std::max(v_, binary_norm(x)) : v_;
        AugmentedRealVector a =
            transform_l2alsh(x, dim_, query_side ? AugmentedRole::Query : AugmentedRole::Data,
                             m_, u_, v);
        RealVectorView view = a.view();
        for (std::uint64_t i = 0; i < n; ++i) {
          out[i] = l2lsh_hash(hs_, t_begin + i, view).value;
        }
        break;
      }
      case ExperimentScheme::SignAlsh: {
        double v = query_side ? std::max(v_, binary_norm(x)) : v_;
        AugmentedRealVector a = transform_signalsh(
            x, dim_, query_side ? AugmentedRole::Query : AugmentedRole::Data, m_, u_, v);
        RealVectorView view = a.view();
        for (std::uint64_t i = 0; i < n; ++i) {
          out[i] = srp_hash(hs_, t_begin + i, view).value;
        }
        break;
      }
    }
  }

 private:
  ExperimentScheme scheme_;
  HashScheme hs_;
  std::uint32_t dim_ = 1;
  std::uint32_t budget_ = 1;
  std::uint32_t m_ = 1;
  double u_ = 0.5;
  double v_ = 1.0;
  std::optional<PaddedMinhashCache> cache_;
};

std::uint32_t derive_budget(const Dataset& train, const ExperimentOptions& opt) {
  if (opt.budget_override != 0) return opt.budget_override;
  std::uint32_t m = train.max_cardinality();
  return m == 0 ? 1 : m;
}

void require_t_fits(std::uint32_t T, const Dataset& train) {
  if (T == 0) throw ArgumentError("T must be at least 1");
  if (T > train.size()) {
    throw ArgumentError("T exceeds the number of train records");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Gold standard
// ---------------------------------------------------------------------------

GoldStandard gold_standard(const Dataset& train, const Dataset& queries,
                           std::uint32_t T) {
  if (T == 0) throw ArgumentError("T must be at least 1");
  require_matching_dims(train, queries);
  GoldStandard gold;
  gold.per_query.resize(queries.size());
  const auto& recs = train.records();
  std::size_t keep = std::min<std::size_t>(T, recs.size());
  if (keep == 0) return gold;  // empty train: every per-query list stays empty

  auto better = [](const GoldEntry& a, const GoldEntry& b) {
    if (a.overlap != b.overlap) return a.overlap > b.overlap;
    return a.id < b.id;
  };
  parallel::parallel_for_chunks(queries.size(), [&](std::size_t qb, std::size_t qe) {
    std::vector<std::uint8_t> mark(train.universe_dim(), 0);
    std::vector<GoldEntry> all(recs.size());
    for (std::size_t qi = qb; qi < qe; ++qi) {
      const SparseBinarySet& q = queries.records()[qi].set;
      for (std::uint32_t i : q.indices()) mark[i] = 1;
      for (std::size_t r = 0; r < recs.size(); ++r) {
        std::uint32_t overlap = 0;
        for (std::uint32_t i : recs[r].set.indices()) overlap += mark[i];
        all[r] = GoldEntry{recs[r].id, overlap};
      }
      std::partial_sort(all.begin(), all.begin() + keep, all.end(), better);
      gold.per_query[qi].assign(all.begin(), all.begin() + keep);
      for (std::uint32_t i : q.indices()) mark[i] = 0;
    }
  });
  return gold;
}

// ---------------------------------------------------------------------------
// Scheme labels
// ---------------------------------------------------------------------------

std::string experiment_scheme_label(ExperimentScheme scheme) {
  switch (scheme) {
    case ExperimentScheme::Minhash:
      return "minhash";
    case ExperimentScheme::MhAlsh:
      return "mh-alsh";
    case ExperimentScheme::L2Alsh:
      return "l2-alsh";
    case ExperimentScheme::SignAlsh:
      return "sign-alsh";
  }
  throw ArgumentError("invalid scheme value");
}

ExperimentScheme parse_experiment_scheme(const std::string& label) {
  if (label == "minhash") return ExperimentScheme::Minhash;
  if (label == "mh-alsh") return ExperimentScheme::MhAlsh;
  if (label == "l2-alsh") return ExperimentScheme::L2Alsh;
  if (label == "sign-alsh") return ExperimentScheme::SignAlsh;
  throw ArgumentError("unknown scheme '" + label +
                      "' (expected minhash, mh-alsh, l2-alsh, or sign-alsh)");
}

// ---------------------------------------------------------------------------
// Match counting
// ---------------------------------------------------------------------------

std::uint32_t count_matches(ExperimentScheme scheme, const ExperimentOptions& opt,
                            std::uint32_t universe_dim, std::uint32_t budget,
                            const SparseBinarySet& q, const SparseBinarySet& x,
                            std::uint32_t K) {
  if (K == 0) throw ArgumentError("K must be at least 1");
  SchemeHasher hasher(scheme, opt, universe_dim, budget, K);
  std::vector<std::uint64_t> qr(K), xr(K);
  hasher.row(q, true, 0, K, qr.data());
  hasher.row(x, false, 0, K, xr.data());
  std::uint32_t matches = 0;
  for (std::uint32_t t = 0; t < K; ++t) matches += (qr[t] == xr[t]);
  return matches;
}

// ---------------------------------------------------------------------------
// Precision / recall walk
// ---------------------------------------------------------------------------

std::vector<double> recall_levels() {
  std::vector<double> levels(100);
  for (int i = 0; i < 100; ++i) levels[i] = static_cast<double>(i + 1) / 100.0;
  return levels;
}

std::vector<double> precision_at_levels(const std::vector<bool>& gold_in_rank_order,
                                        std::uint32_t gold_count) {
  if (gold_count == 0) throw ArgumentError("gold count must be positive");
  const std::vector<double> levels = recall_levels();
  std::vector<double> out(levels.size(), 0.0);
  std::size_t li = 0;
  std::uint32_t rel = 0;
  double last_precision = 0.0;
  for (std::size_t p = 1; p <= gold_in_rank_order.size() && li < levels.size(); ++p) {
    if (!gold_in_rank_order[p - 1]) continue;
    ++rel;
    double recall = static_cast<double>(rel) / gold_count;
    double precision = static_cast<double>(rel) / static_cast<double>(p);
    last_precision = precision;
    while (li < levels.size() && recall >= levels[li]) out[li++] = precision;
  }
  // A list holding every gold member crosses every level; anything shorter
  // (not produced by the experiments) keeps the end-of-walk precision.
  while (li < levels.size()) out[li++] = last_precision;
  return out;
}

// ---------------------------------------------------------------------------
// Ranking experiment
// ---------------------------------------------------------------------------

RankingReport ranking_experiment(const Dataset& train, const Dataset& queries,
                                 const std::vector<ExperimentScheme>& schemes,
                                 const std::vector<std::uint32_t>& k_list,
                                 std::uint32_t T, const ExperimentOptions& opt) {
  if (schemes.empty()) throw ArgumentError("at least one scheme is required");
  if (k_list.empty()) throw ArgumentError("at least one K value is required");
  for (std::uint32_t k : k_list) {
    if (k == 0) throw ArgumentError("K must be at least 1");
  }
  require_matching_dims(train, queries);
  require_t_fits(T, train);

  const std::size_t n = train.size();
  const std::size_t nq = queries.size();
  const std::uint32_t budget = derive_budget(train, opt);
  const std::vector<double> levels = recall_levels();

  GoldStandard gold = gold_standard(train, queries, T);

  // Record ids (rank tie-break) and id → position lookup for gold marking.
  const auto& recs = train.records();
  std::vector<std::int64_t> ids(n);
  std::unordered_map<std::int64_t, std::uint32_t> pos_of;
  pos_of.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = recs[i].id;
    pos_of.emplace(ids[i], static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<std::uint32_t>> gold_pos(nq);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    gold_pos[qi].reserve(gold.per_query[qi].size());
    for (const GoldEntry& e : gold.per_query[qi]) gold_pos[qi].push_back(pos_of.at(e.id));
  }

  std::vector<std::uint32_t> ks(k_list.begin(), k_list.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  const std::uint32_t kmax = ks.back();

  RankingReport report;
  for (ExperimentScheme scheme : schemes) {
    SchemeHasher hasher(scheme, opt, train.universe_dim(), budget, kmax);
    std::vector<std::uint64_t> hmat(n * static_cast<std::size_t>(kmax));
    parallel::parallel_for(n, [&](std::size_t i) {
      hasher.row(recs[i].set, false, 0, kmax, &hmat[i * kmax]);
    });
    std::vector<std::uint64_t> qmat(nq * static_cast<std::size_t>(kmax));
    parallel::parallel_for(nq, [&](std::size_t qi) {
      hasher.row(queries.records()[qi].set, true, 0, kmax, &qmat[qi * kmax]);
    });

    // prec[qi][ki][level]: per-query precision curves, merged afterwards in
    // query order so reductions do not depend on the worker count.
    std::vector<std::vector<std::vector<double>>> prec(nq);
    parallel::parallel_for_chunks(nq, [&](std::size_t qb, std::size_t qe) {
      std::vector<std::vector<std::uint32_t>> counts(
          ks.size(), std::vector<std::uint32_t>(n));
      std::vector<std::uint32_t> order(n);
      std::vector<std::uint8_t> is_gold(n);
      std::vector<bool> flags(n);
      for (std::size_t qi = qb; qi < qe; ++qi) {
        const std::uint64_t* qrow = &qmat[qi * kmax];
        for (std::size_t i = 0; i < n; ++i) {
          const std::uint64_t* hrow = &hmat[i * kmax];
          std::uint32_t cnt = 0;
          std::size_t ki = 0;
          for (std::uint32_t t = 0; t < kmax; ++t) {
            cnt += (hrow[t] == qrow[t]);
            if (ki < ks.size() && t + 1 == ks[ki]) {
              counts[ki][i] = cnt;
              ++ki;
            }
          }
        }
        std::fill(is_gold.begin(), is_gold.end(), 0);
        for (std::uint32_t pos : gold_pos[qi]) is_gold[pos] = 1;
        prec[qi].resize(ks.size());
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
          const std::vector<std::uint32_t>& cnt = counts[ki];
          for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
          std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (cnt[a] != cnt[b]) return cnt[a] > cnt[b];
            return ids[a] < ids[b];
          });
          for (std::size_t p = 0; p < n; ++p) flags[p] = is_gold[order[p]] != 0;
          prec[qi][ki] = precision_at_levels(flags, T);
        }
      }
    });

    // Mean across queries, then emit curves in the caller's K order.
    std::vector<std::vector<double>> mean(ks.size(), std::vector<double>(levels.size(), 0.0));
    for (std::size_t qi = 0; qi < nq; ++qi) {
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        for (std::size_t li = 0; li < levels.size(); ++li) {
          mean[ki][li] += prec[qi][ki][li];
        }
      }
    }
    for (auto& row : mean) {
      for (double& v : row) v /= nq == 0 ? 1.0 : static_cast<double>(nq);
    }
    for (std::uint32_t k : k_list) {
      std::size_t ki = static_cast<std::size_t>(
          std::lower_bound(ks.begin(), ks.end(), k) - ks.begin());
      RankingCurve curve;
      curve.scheme = scheme;
      curve.K = k;
      curve.points.resize(levels.size());
      for (std::size_t li = 0; li < levels.size(); ++li) {
        curve.points[li] = RankingPoint{levels[li], mean[ki][li]};
      }
      report.curves.push_back(std::move(curve));
    }
  }
  return report;
}

std::string ranking_to_csv(const RankingReport& report) {
  std::string out = "scheme,K,recall,precision\n";
  for (const RankingCurve& curve : report.curves) {
    const std::string label = experiment_scheme_label(curve.scheme);
    for (const RankingPoint& pt : curve.points) {
      out += label;
      out += ',';
      out += std::to_string(curve.K);
      out += ',';
      out += csv::format_double(pt.recall);
      out += ',';
      out += csv::format_double(pt.precision);
      out += '\n';
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bucketing experiment
// ---------------------------------------------------------------------------

BucketingReport bucketing_experiment(const Dataset& train, const Dataset& queries,
                                     const std::vector<ExperimentScheme>& schemes,
                                     const std::vector<std::uint32_t>& k_range,
                                     const std::vector<std::uint32_t>& l_range,
                                     const std::vector<std::uint32_t>& t_list,
                                     const ExperimentOptions& opt) {
  if (schemes.empty()) throw ArgumentError("at least one scheme is required");
  if (k_range.empty() || l_range.empty()) {
    throw ArgumentError("K and L ranges must be non-empty");
  }
  if (t_list.empty()) throw ArgumentError("at least one T value is required");
  require_matching_dims(train, queries);
  for (std::uint32_t k : k_range) {
    if (k == 0) throw ArgumentError("K must be at least 1");
  }
  for (std::uint32_t l : l_range) {
    if (l == 0) throw ArgumentError("L must be at least 1");
  }
  std::uint32_t t_max = 0;
  for (std::uint32_t t : t_list) {
    require_t_fits(t, train);
    t_max = std::max(t_max, t);
  }

  std::vector<std::uint32_t> ks(k_range.begin(), k_range.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<std::uint32_t> ls(l_range.begin(), l_range.end());
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

  const std::size_t n = train.size();
  const std::size_t nq = queries.size();
  const std::uint32_t budget = derive_budget(train, opt);
  const std::uint64_t t_total =
      static_cast<std::uint64_t>(ks.back()) * static_cast<std::uint64_t>(ls.back());
  const std::size_t lmax = ls.back();

  GoldStandard gold = gold_standard(train, queries, t_max);

  // rank_of[qi][pos]: 0-based gold rank of train position pos, or kNoRank.
  const auto& recs = train.records();
  std::unordered_map<std::int64_t, std::uint32_t> pos_of;
  pos_of.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    pos_of.emplace(recs[i].id, static_cast<std::uint32_t>(i));
  }
  std::vector<std::vector<std::uint32_t>> rank_of(nq);
  for (std::size_t qi = 0; qi < nq; ++qi) {
    rank_of[qi].assign(n, kNoRank);
    for (std::size_t r = 0; r < gold.per_query[qi].size(); ++r) {
      rank_of[qi][pos_of.at(gold.per_query[qi][r].id)] = static_cast<std::uint32_t>(r);
    }
  }

  BucketingReport report;
  report.t_list = t_list;

  for (ExperimentScheme scheme : schemes) {
    SchemeHasher hasher(scheme, opt, train.universe_dim(), budget, t_total);
    std::vector<std::uint64_t> hmat(n * t_total);
    parallel::parallel_for(n, [&](std::size_t i) {
      hasher.row(recs[i].set, false, 0, t_total, &hmat[i * t_total]);
    });
    std::vector<std::uint64_t> qmat(nq * t_total);
    parallel::parallel_for(nq, [&](std::size_t qi) {
      hasher.row(queries.records()[qi].set, true, 0, t_total, &qmat[qi * t_total]);
    });

    std::vector<std::uint64_t> dkeys(n * lmax);
    std::vector<std::uint64_t> qkeys(nq * lmax);
    std::vector<std::uint8_t> seen(nq * n);
    std::vector<std::uint64_t> cand(nq), raw(nq);
    std::vector<std::vector<std::uint64_t>> rel(nq);
    std::vector<std::pair<std::uint64_t, std::uint32_t>> entries(n);

    for (std::uint32_t K : ks) {
      parallel::parallel_for(n, [&](std::size_t i) {
        const std::uint64_t* hrow = &hmat[i * t_total];
        for (std::size_t j = 0; j < lmax; ++j) {
          std::uint64_t acc = rng::kGolden;
          for (std::uint32_t k = 0; k < K; ++k) {
            acc = rng::mix64(acc ^ hrow[j * K + k]);
          }
          dkeys[i * lmax + j] = acc;
        }
      });
      parallel::parallel_for(nq, [&](std::size_t qi) {
        const std::uint64_t* qrow = &qmat[qi * t_total];
        for (std::size_t j = 0; j < lmax; ++j) {
          std::uint64_t acc = rng::kGolden;
          for (std::uint32_t k = 0; k < K; ++k) {
            acc = rng::mix64(acc ^ qrow[j * K + k]);
          }
          qkeys[qi * lmax + j] = acc;
        }
      });

      std::fill(seen.begin(), seen.end(), 0);
      std::fill(cand.begin(), cand.end(), 0);
      std::fill(raw.begin(), raw.end(), 0);
      for (std::size_t qi = 0; qi < nq; ++qi) rel[qi].assign(t_list.size(), 0);

      // Tables j = 0..lmax-1 in order; every L in the range is a checkpoint,
      // so candidates accumulate incrementally (tables for L are a prefix of
      // the tables for L+1 by construction).
      std::size_t li = 0;
      for (std::size_t j = 0; j < lmax; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          entries[i] = {dkeys[i * lmax + j], static_cast<std::uint32_t>(i)};
        }
        std::sort(entries.begin(), entries.end());
        for (std::size_t qi = 0; qi < nq; ++qi) {
          const std::uint64_t key = qkeys[qi * lmax + j];
          auto lo = std::lower_bound(
              entries.begin(), entries.end(), key,
              [](const auto& e, std::uint64_t k) { return e.first < k; });
          std::uint8_t* seen_row = &seen[qi * n];
          for (auto it = lo; it != entries.end() && it->first == key; ++it) {
            ++raw[qi];
            const std::uint32_t pos = it->second;
            if (seen_row[pos]) continue;
            seen_row[pos] = 1;
            ++cand[qi];
            const std::uint32_t r = rank_of[qi][pos];
            if (r == kNoRank) continue;
            for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
              if (r < t_list[ti]) ++rel[qi][ti];
            }
          }
        }
        if (li < ls.size() && j + 1 == ls[li]) {
          BucketingSweepPoint pt;
          pt.scheme = scheme;
          pt.K = K;
          pt.L = ls[li];
          pt.mean_recall.assign(t_list.size(), 0.0);
          for (std::size_t qi = 0; qi < nq; ++qi) {
            pt.mean_fraction += static_cast<double>(cand[qi]) / static_cast<double>(n);
            pt.mean_raw_count += static_cast<double>(raw[qi]);
            for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
              pt.mean_recall[ti] += static_cast<double>(rel[qi][ti]) /
                                    static_cast<double>(t_list[ti]);
            }
          }
          const double dq = nq == 0 ? 1.0 : static_cast<double>(nq);
          pt.mean_fraction /= dq;
          pt.mean_raw_count /= dq;
          for (double& v : pt.mean_recall) v /= dq;
          report.sweep.push_back(std::move(pt));
          ++li;
        }
      }
    }
  }

  // Per-(scheme, T, level) selection: minimal mean fraction subject to mean
  // recall ≥ level; sweep order (K then L ascending) makes strict `<` break
  // ties toward smaller K, then smaller L.
  const std::vector<double> levels = recall_levels();
  for (ExperimentScheme scheme : schemes) {
    for (std::size_t ti = 0; ti < t_list.size(); ++ti) {
      for (double level : levels) {
        const BucketingSweepPoint* best = nullptr;
        for (const BucketingSweepPoint& pt : report.sweep) {
          if (pt.scheme != scheme) continue;
          if (pt.mean_recall[ti] < level) continue;
          if (best == nullptr || pt.mean_fraction < best->mean_fraction) best = &pt;
        }
        if (best == nullptr) continue;  // level not achievable for this scheme
        report.rows.push_back(BucketingRow{scheme, t_list[ti], level,
                                           best->mean_fraction, best->K, best->L});
      }
    }
  }
  return report;
}

std::string bucketing_to_csv(const BucketingReport& report) {
  std::string out = "scheme,T,recall_level,fraction,bestK,bestL\n";
  for (const BucketingRow& row : report.rows) {
    out += experiment_scheme_label(row.scheme);
    out += ',';
    out += std::to_string(row.T);
    out += ',';
    out += csv::format_double(row.recall_level);
    out += ',';
    out += csv::format_double(row.fraction);
    out += ',';
    out += std::to_string(row.best_k);
    out += ',';
    out += std::to_string(row.best_l);
    out += '\n';
  }
  return out;
}

std::vector<std::uint32_t> default_bucketing_k_range() {
  std::vector<std::uint32_t> ks;
  for (std::uint32_t k = 1; k <= 12; ++k) ks.push_back(k);
  return ks;
}

std::vector<std::uint32_t> default_bucketing_l_range() {
  std::vector<std::uint32_t> ls{1};
  for (std::uint32_t l = 2; l <= 128; l *= 2) ls.push_back(l);
  return ls;
}

std::vector<std::uint32_t> full_bucketing_k_range() {
  std::vector<std::uint32_t> ks;
  for (std::uint32_t k = 1; k <= 40; ++k) ks.push_back(k);
  return ks;
}

std::vector<std::uint32_t> full_bucketing_l_range() {
  std::vector<std::uint32_t> ls;
  for (std::uint32_t l = 1; l <= 400; ++l) ls.push_back(l);
  return ls;
}

// ---------------------------------------------------------------------------
// Synthetic corpus
// ---------------------------------------------------------------------------

namespace {

// Generator shape: a 50k universe whose first kStopPool coordinates are
// globally shared "stopwords".  Each of the 12 clusters owns a core of
// 235–255 coordinates.  Train records mix four roles — long members carrying
// most of a core, shorter fragments carrying a core subset, stopword-heavy
// tiny records, and background noise — giving cardinalities whose standard
// deviation matches their mean.  Queries look like mid-length members with a
// strong stopword load, so high-overlap neighbors are spread across both the
// long-member and fragment populations.
constexpr std::uint32_t kStopPool = 50;
constexpr std::uint32_t kClusterCount = 12;
constexpr std::uint64_t kCoreLo = 235, kCoreHi = 256;
constexpr std::uint64_t kMemberFLo = 520, kMemberFHi = 581;
constexpr double kMemberPxLo = 0.75, kMemberPxHi = 0.95;
constexpr std::uint64_t kMemberStopLo = 5, kMemberStopHi = 16;
constexpr std::uint64_t kFragmentLo = 140, kFragmentHi = 181;
constexpr std::uint64_t kFragmentStopLo = 3, kFragmentStopHi = 9;
constexpr std::uint64_t kStopTinyStopLo = 40, kStopTinyStopHi = 49;
constexpr std::uint64_t kStopTinyNoiseLo = 2, kStopTinyNoiseHi = 6;
constexpr std::uint64_t kNoiseStopLo = 2, kNoiseStopHi = 7;
constexpr std::uint64_t kNoiseFLo = 15, kNoiseFHi = 61;
constexpr std::uint64_t kQueryFLo = 315, kQueryFHi = 346;
constexpr double kQueryPxLo = 0.82, kQueryPxHi = 0.93;
constexpr std::uint64_t kQueryStopLo = 46, kQueryStopHi = 51;
constexpr double kShareMember = 0.25, kShareFragment = 0.40, kShareStopTiny = 0.75;

class CorpusBuilder {
 public:
  explicit CorpusBuilder(std::uint64_t seed) : seq_(seed, rng::kTagCorpus) {
    cores_.resize(kClusterCount);
    for (auto& core : cores_) {
      const std::uint64_t size = seq_.next_in(kCoreLo, kCoreHi);
      std::unordered_set<std::uint32_t> picks;
      picks.reserve(size * 2);
      while (picks.size() < size) {
        picks.insert(static_cast<std::uint32_t>(
            seq_.next_in(kStopPool, kSyntheticUniverseDim)));
      }
      core.assign(picks.begin(), picks.end());
      std::sort(core.begin(), core.end());
    }
  }

  std::vector<std::uint32_t> train_record() {
    const double u = seq_.next_unit();
    const std::uint32_t c = static_cast<std::uint32_t>(seq_.next_in(0, kClusterCount));
    if (u < kShareMember) return member(c);
    if (u < kShareFragment) return fragment(c);
    if (u < kShareStopTiny) return stop_tiny();
    return noise_record();
  }

  std::vector<std::uint32_t> query_record() {
    const std::uint32_t c = static_cast<std::uint32_t>(seq_.next_in(0, kClusterCount));
    const std::uint64_t f = seq_.next_in(kQueryFLo, kQueryFHi);
    const double px = kQueryPxLo + (kQueryPxHi - kQueryPxLo) * seq_.next_unit();
    std::unordered_set<std::uint32_t> s = core_subset_by_coin(c, px);
    add_stops(s, seq_.next_in(kQueryStopLo, kQueryStopHi));
    fill_noise(s, std::max<std::size_t>(f, s.size()));
    return sorted(s);
  }

 private:
  std::unordered_set<std::uint32_t> core_subset_by_coin(std::uint32_t c, double px) {
    std::unordered_set<std::uint32_t> s;
    s.reserve(cores_[c].size() * 2);
    for (std::uint32_t v : cores_[c]) {
      if (seq_.next_unit() < px) s.insert(v);
    }
    return s;
  }

  void add_stops(std::unordered_set<std::uint32_t>& s, std::uint64_t count) {
    count = std::min<std::uint64_t>(count, kStopPool);
    std::uint64_t added = 0;
    while (added < count) {
      if (s.insert(static_cast<std::uint32_t>(seq_.next_in(0, kStopPool))).second) ++added;
    }
  }

  void fill_noise(std::unordered_set<std::uint32_t>& s, std::size_t target) {
    while (s.size() < target) {
      s.insert(static_cast<std::uint32_t>(seq_.next_in(kStopPool, kSyntheticUniverseDim)));
    }
  }

  static std::vector<std::uint32_t> sorted(const std::unordered_set<std::uint32_t>& s) {
    std::vector<std::uint32_t> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<std::uint32_t> member(std::uint32_t c) {
    const std::uint64_t f = seq_.next_in(kMemberFLo, kMemberFHi);
    const double px = kMemberPxLo + (kMemberPxHi - kMemberPxLo) * seq_.next_unit();
    std::unordered_set<std::uint32_t> s = core_subset_by_coin(c, px);
    add_stops(s, seq_.next_in(kMemberStopLo, kMemberStopHi));
    fill_noise(s, std::max<std::size_t>(f, s.size()));
    return sorted(s);
  }

  std::vector<std::uint32_t> fragment(std::uint32_t c) {
    const auto& core = cores_[c];
    const std::uint64_t f = seq_.next_in(kFragmentLo, kFragmentHi);
    const std::size_t take = std::min<std::size_t>(f, core.size());
    std::unordered_set<std::uint32_t> s;
    s.reserve(take * 2);
    while (s.size() < take) {
      s.insert(core[seq_.next_in(0, core.size())]);
    }
    add_stops(s, seq_.next_in(kFragmentStopLo, kFragmentStopHi));
    return sorted(s);  // fragments are not padded with noise
  }

  std::vector<std::uint32_t> stop_tiny() {
    std::unordered_set<std::uint32_t> s;
    add_stops(s, seq_.next_in(kStopTinyStopLo, kStopTinyStopHi));
    fill_noise(s, s.size() + seq_.next_in(kStopTinyNoiseLo, kStopTinyNoiseHi));
    return sorted(s);
  }

  std::vector<std::uint32_t> noise_record() {
    std::unordered_set<std::uint32_t> s;
    add_stops(s, seq_.next_in(kNoiseStopLo, kNoiseStopHi));
    fill_noise(s, seq_.next_in(kNoiseFLo, kNoiseFHi));
    return sorted(s);
  }

  rng::Sequence seq_;
  std::vector<std::vector<std::uint32_t>> cores_;
};

}  // namespace

SyntheticCorpus synthetic_corpus(std::uint64_t seed, std::uint32_t n_train,
                                 std::uint32_t n_query) {
  if (n_train == 0 || n_query == 0) {
    throw ArgumentError("corpus sizes must be positive");
  }
  CorpusBuilder builder(seed);
  std::vector<DatasetRecord> train;
  train.reserve(n_train);
  for (std::uint32_t i = 0; i < n_train; ++i) {
    train.push_back(DatasetRecord{static_cast<std::int64_t>(i),
                                  SparseBinarySet::from_sorted_unique(builder.train_record())});
  }
  std::vector<DatasetRecord> queries;
  queries.reserve(n_query);
  for (std::uint32_t i = 0; i < n_query; ++i) {
    queries.push_back(DatasetRecord{
        static_cast<std::int64_t>(i),
        SparseBinarySet::from_sorted_unique(builder.query_record())});
  }
  return SyntheticCorpus{Dataset(kSyntheticUniverseDim, std::move(train)),
                         Dataset(kSyntheticUniverseDim, std::move(queries))};
}

}  // namespace amh
