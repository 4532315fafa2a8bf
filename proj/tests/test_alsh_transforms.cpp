#include <algorithm>
#include <cmath>
#include <cstdint>
#include <doctest.h>
#include <string>
#include <vector>

#include "amh/alsh_transforms.hpp"
#include "amh/errors.hpp"
#include "amh/hash_families.hpp"
#include "amh/rng.hpp"
#include "amh/sparse_data.hpp"
#include "amh/weighted_vector.hpp"

using namespace amh;

namespace {

SparseBinarySet set_of(std::vector<std::uint32_t> idx) {
  return SparseBinarySet::from_unsorted(std::move(idx));
}

// Materialize the implicit padding of a PaddedBinarySet as a plain set.
SparseBinarySet materialize(const PaddedBinarySet& p) {
  std::vector<std::uint32_t> idx = p.base.indices();
  for (std::uint32_t i = 0; i < p.pad1_count; ++i) idx.push_back(p.universe_dim + i);
  for (std::uint32_t i = 0; i < p.pad2_count; ++i) {
    idx.push_back(p.universe_dim + p.budget + i);
  }
  return SparseBinarySet::from_unsorted(std::move(idx));
}

// Random subset of [0, dim) with the requested cardinality.
SparseBinarySet random_set(rng::Sequence& seq, std::uint32_t dim, std::uint32_t card) {
  std::vector<std::uint32_t> pool(dim);
  for (std::uint32_t i = 0; i < dim; ++i) pool[i] = i;
  rng::shuffle(pool, seq);
  pool.resize(card);
  return SparseBinarySet::from_unsorted(std::move(pool));
}

double uniform_in(rng::Sequence& seq, double lo, double hi) {
  return lo + (hi - lo) * seq.next_unit();
}

std::vector<double> densify(const AugmentedRealVector& a) {
  std::vector<double> full(a.length(), 0.0);
  for (std::size_t i = 0; i < a.body_indices().size(); ++i) {
    full[a.body_indices()[i]] = a.body_values()[i];
  }
  for (std::size_t i = 0; i < a.tail().size(); ++i) {
    full[a.universe_dim() + i] = a.tail()[i];
  }
  return full;
}

double dense_dot(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double dense_dist2(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
  return s;
}

}  // namespace

TEST_SUITE("alsh_transforms") {

TEST_CASE("binary padding puts the right number of ones in the right region") {
  auto x = set_of({0, 4, 7});  // f = 3
  const std::uint32_t D = 10, M = 5;

  auto dd = transform_mh(x, D, M, MhRole::DataDouble);
  CHECK(dd.pad1_count == 2);
  CHECK(dd.pad2_count == 0);
  CHECK(dd.total_cardinality() == 5);
  CHECK_FALSE(dd.clamped);

  auto qd = transform_mh(x, D, M, MhRole::QueryDouble);
  CHECK(qd.pad1_count == 0);
  CHECK(qd.pad2_count == 2);

  auto dp = transform_mh(x, D, M, MhRole::DataPrime);
  CHECK(dp.pad1_count == 2);
  CHECK(dp.pad2_count == 0);

  auto qp = transform_mh(x, D, M, MhRole::QueryPrime);
  CHECK(qp.pad1_count == 0);
  CHECK(qp.pad2_count == 0);
  CHECK(qp.total_cardinality() == 3);
}

TEST_CASE("binary padding enforces the budget on the data side only") {
  auto big = set_of({0, 1, 2, 3, 4, 5});  // f = 6 > M = 5
  try {
    transform_mh(big, 10, 5, MhRole::DataDouble);
    FAIL("expected CardinalityExceedsBudgetError");
  } catch (const CardinalityExceedsBudgetError& e) {
    std::string msg = e.what();
    CHECK(msg.find('6') != std::string::npos);
    CHECK(msg.find('5') != std::string::npos);
  }
  auto q = transform_mh(big, 10, 5, MhRole::QueryDouble);
  CHECK(q.clamped);
  CHECK(q.pad2_count == 0);

  CHECK_THROWS_AS(transform_mh(big, 10, 0, MhRole::QueryDouble), ArgumentError);
  CHECK_THROWS_AS(transform_mh(big, 0, 5, MhRole::QueryDouble), ArgumentError);
}

TEST_CASE("padded hashing is bit-identical to hashing the materialized set") {
  HashScheme s;
  s.master_seed = 404;
  rng::Sequence seq(8, rng::kTagCorpus);
  const std::uint32_t D = 64;
  for (int rep = 0; rep < 250; ++rep) {
    std::uint32_t M = static_cast<std::uint32_t>(seq.next_in(1, 12));
    std::uint32_t f = static_cast<std::uint32_t>(seq.next_in(0, M + 1));
    auto x = random_set(seq, D, f);
    for (MhRole role : {MhRole::DataPrime, MhRole::DataDouble, MhRole::QueryDouble}) {
      auto p = transform_mh(x, D, M, role);
      auto m = materialize(p);
      for (std::uint64_t t : {std::uint64_t{0}, seq.next_in(0, 1000)}) {
        if (m.empty()) continue;
        CHECK(padded_minhash(s, t, p) == minhash(s, t, m));
      }
    }
  }
}

TEST_CASE("double padding realizes overlap a and union 2M - a") {
  rng::Sequence seq(9, rng::kTagCorpus);
  const std::uint32_t D = 40;
  for (int rep = 0; rep < 300; ++rep) {
    std::uint32_t M = static_cast<std::uint32_t>(seq.next_in(2, 15));
    std::uint32_t fx = static_cast<std::uint32_t>(seq.next_in(1, M + 1));
    std::uint32_t fq = static_cast<std::uint32_t>(seq.next_in(1, M + 1));
    auto x = random_set(seq, D, fx);
    auto q = random_set(seq, D, fq);
    std::uint32_t a = intersection_size(x, q);

    auto px = materialize(transform_mh(x, D, M, MhRole::DataDouble));
    auto pq = materialize(transform_mh(q, D, M, MhRole::QueryDouble));
    CHECK(intersection_size(px, pq) == a);
    CHECK(union_size(px, pq) == 2ull * M - a);

    // Single-sided padding: query keeps its raw cardinality.
    auto sx = materialize(transform_mh(x, D, M, MhRole::DataPrime));
    auto sq = materialize(transform_mh(q, D, M, MhRole::QueryPrime));
    CHECK(intersection_size(sx, sq) == a);
    CHECK(union_size(sx, sq) == static_cast<std::uint64_t>(M) + fq - a);
  }
}

TEST_CASE("prefix cache reproduces padded hashing exactly") {
  HashScheme s;
  s.master_seed = 2718;
  const std::uint32_t D = 30, M = 8;
  const std::uint64_t T = 64;
  PaddedMinhashCache cache(s, D, M, T);
  CHECK(cache.budget() == M);
  CHECK(cache.universe_dim() == D);

  rng::Sequence seq(10, rng::kTagCorpus);
  for (int rep = 0; rep < 60; ++rep) {
    std::uint32_t f = static_cast<std::uint32_t>(seq.next_in(0, M + 1));
    auto x = random_set(seq, D, f);
    for (MhRole role : {MhRole::DataDouble, MhRole::QueryDouble, MhRole::DataPrime}) {
      auto p = transform_mh(x, D, M, role);
      if (p.total_cardinality() == 0) continue;
      for (std::uint64_t t = 0; t < T; ++t) {
        CHECK(cache.hash(p, t) == padded_minhash(s, t, p));
      }
    }
  }
}

TEST_CASE("weighted padding lands leftover mass on disjoint reserved coordinates") {
  const std::uint32_t D = 12, M = 9;
  auto x = set_of({1, 3, 5, 7});      // f = 4
  auto q = set_of({3, 5, 9});         // f = 3, overlap a = 2

  bool clamped = false;
  auto wx = transform_weighted(x, D, M, WeightedRole::DataTriple, &clamped);
  CHECK_FALSE(clamped);
  auto wq = transform_weighted(q, D, M, WeightedRole::QueryTriple, &clamped);
  CHECK_FALSE(clamped);

  // Data mass M - f on coordinate D; query mass on D + 1.
  auto find_weight = [](const WeightedSparseVector& v, std::uint32_t i) {
    for (std::size_t k = 0; k < v.indices().size(); ++k) {
      if (v.indices()[k] == i) return v.weights()[k];
    }
    return 0.0;
  };
  CHECK(find_weight(wx, D) == 5.0);
  CHECK(find_weight(wx, D + 1) == 0.0);
  CHECK(find_weight(wq, D + 1) == 6.0);
  CHECK(find_weight(wq, D) == 0.0);
  CHECK(wx.sum_weights() == doctest::Approx(double(M)).epsilon(1e-15));
  CHECK(wq.sum_weights() == doctest::Approx(double(M)).epsilon(1e-15));

  // Overlap law in exact integer arithmetic: sum-min = a, sum-max = 2M - a.
  std::uint64_t smin = 0, smax = 0;
  {
    auto const& ui = wx.indices();
    auto const& vi = wq.indices();
    std::size_t i = 0, j = 0;
    while (i < ui.size() || j < vi.size()) {
      if (j == vi.size() || (i < ui.size() && ui[i] < vi[j])) {
        smax += static_cast<std::uint64_t>(wx.weights()[i]);
        ++i;
      } else if (i == ui.size() || vi[j] < ui[i]) {
        smax += static_cast<std::uint64_t>(wq.weights()[j]);
        ++j;
      } else {
        smin += static_cast<std::uint64_t>(std::min(wx.weights()[i], wq.weights()[j]));
        smax += static_cast<std::uint64_t>(std::max(wx.weights()[i], wq.weights()[j]));
        ++i;
        ++j;
      }
    }
  }
  CHECK(smin == 2);
  CHECK(smax == 2ull * M - 2);
  CHECK(weighted_jaccard(wx, wq) == doctest::Approx(2.0 / (2.0 * M - 2.0)).epsilon(1e-15));

  // Budget violations: data throws, query clamps.
  std::vector<std::uint32_t> big;
  for (std::uint32_t i = 0; i < M + 1; ++i) big.push_back(i);
  CHECK_THROWS_AS(transform_weighted(set_of(big), D, M, WeightedRole::DataTriple),
                  CardinalityExceedsBudgetError);
  clamped = false;
  auto wc = transform_weighted(set_of(big), D, M, WeightedRole::QueryTriple, &clamped);
  CHECK(clamped);
  CHECK(wc.sum_weights() == doctest::Approx(double(M + 1)).epsilon(1e-15));
}

TEST_CASE("weighted-intersection padding mirrors the binary rules for real weights") {
  const std::uint32_t D = 6;
  auto v = WeightedSparseVector::from_pairs({{0, 1.5}, {2, 2.0}});
  bool clamped = false;
  auto d = transform_weighted_intersection(v, D, 10.0, WeightedRole::DataTriple, &clamped);
  CHECK_FALSE(clamped);
  CHECK(d.sum_weights() == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(d.indices().back() == D);

  auto q = transform_weighted_intersection(v, D, 10.0, WeightedRole::QueryTriple);
  CHECK(q.indices().back() == D + 1);

  CHECK_THROWS_AS(
      transform_weighted_intersection(v, D, 3.0, WeightedRole::DataTriple),
      SumExceedsBudgetError);
  clamped = false;
  auto qc = transform_weighted_intersection(v, D, 3.0, WeightedRole::QueryTriple, &clamped);
  CHECK(clamped);
  CHECK(qc.sum_weights() == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("euclidean augmentation appends norm powers and halves") {
  const std::uint32_t D = 4, m = 2;
  auto v = WeightedSparseVector::from_pairs({{0, 1.0}});
  // U/V = 0.8 -> scaled norm 0.8; powers 0.64, 0.4096.
  auto d = transform_l2alsh(v, D, AugmentedRole::Data, m, 0.8, 1.0);
  REQUIRE(d.tail().size() == 4);
  CHECK(d.tail()[0] == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(d.tail()[1] == doctest::Approx(0.4096).epsilon(1e-12));
  CHECK(d.tail()[2] == 0.5);
  CHECK(d.tail()[3] == 0.5);
  CHECK(d.body_values()[0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(d.length() == D + 2 * m);

  auto q = transform_l2alsh(v, D, AugmentedRole::Query, m, 0.8, 1.0);
  REQUIRE(q.tail().size() == 4);
  CHECK(q.tail()[0] == 0.5);
  CHECK(q.tail()[1] == 0.5);
  CHECK(q.tail()[2] == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(q.tail()[3] == doctest::Approx(0.4096).epsilon(1e-12));
}

TEST_CASE("sign augmentation appends norm scalers and zeros") {
  const std::uint32_t D = 4, m = 2;
  auto v = WeightedSparseVector::from_pairs({{0, 1.0}});
  auto d = transform_signalsh(v, D, AugmentedRole::Data, m, 0.8, 1.0);
  REQUIRE(d.tail().size() == 4);
  CHECK(d.tail()[0] == doctest::Approx(0.5 - 0.64).epsilon(1e-12));
  CHECK(d.tail()[1] == doctest::Approx(0.5 - 0.4096).epsilon(1e-12));
  CHECK(d.tail()[2] == 0.0);
  CHECK(d.tail()[3] == 0.0);

  auto q = transform_signalsh(v, D, AugmentedRole::Query, m, 0.8, 1.0);
  CHECK(q.tail()[0] == 0.0);
  CHECK(q.tail()[1] == 0.0);
  CHECK(q.tail()[2] == doctest::Approx(0.5 - 0.64).epsilon(1e-12));
  CHECK(q.tail()[3] == doctest::Approx(0.5 - 0.4096).epsilon(1e-12));
}

TEST_CASE("sign augmentation preserves inner products up to the fixed scale") {
  rng::Sequence seq(12, rng::kTagCorpus);
  const std::uint32_t D = 20, m = 3;
  const double U = 0.75, V = 4.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::pair<std::uint32_t, double>> px, pq;
    for (std::uint32_t i = 0; i < D; ++i) {
      if (seq.next_unit() < 0.5) px.push_back({i, uniform_in(seq, 0.1, 3.0)});
      if (seq.next_unit() < 0.5) pq.push_back({i, uniform_in(seq, 0.1, 3.0)});
    }
    auto x = WeightedSparseVector::from_pairs(px);
    auto q = WeightedSparseVector::from_pairs(pq);
    if (std::sqrt(x.squared_norm()) > V || std::sqrt(q.squared_norm()) > V) continue;

    auto ax = densify(transform_signalsh(x, D, AugmentedRole::Data, m, U, V));
    auto aq = densify(transform_signalsh(q, D, AugmentedRole::Query, m, U, V));
    double raw = 0.0;
    {
      auto const& xi = x.indices();
      auto const& qi = q.indices();
      std::size_t i = 0, j = 0;
      while (i < xi.size() && j < qi.size()) {
        if (xi[i] < qi[j]) ++i;
        else if (qi[j] < xi[i]) ++j;
        else raw += x.weights()[i++] * q.weights()[j++];
      }
    }
    CHECK(dense_dot(ax, aq) ==
          doctest::Approx((U / V) * (U / V) * raw).epsilon(1e-10).scale(1e-9));
  }
}

TEST_CASE("euclidean augmentation distance matches the dense formula") {
  rng::Sequence seq(13, rng::kTagCorpus);
  const std::uint32_t D = 16, m = 3;
  const double U = 0.83, V = 5.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::pair<std::uint32_t, double>> px, pq;
    for (std::uint32_t i = 0; i < D; ++i) {
      if (seq.next_unit() < 0.5) px.push_back({i, uniform_in(seq, 0.1, 2.0)});
      if (seq.next_unit() < 0.5) pq.push_back({i, uniform_in(seq, 0.1, 2.0)});
    }
    auto x = WeightedSparseVector::from_pairs(px);
    auto q = WeightedSparseVector::from_pairs(pq);
    if (std::sqrt(x.squared_norm()) > V || std::sqrt(q.squared_norm()) > V) continue;

    auto dx = transform_l2alsh(x, D, AugmentedRole::Data, m, U, V);
    auto dq = transform_l2alsh(q, D, AugmentedRole::Query, m, U, V);
    auto fx = densify(dx);
    auto fq = densify(dq);

    // Telescoping distance identity of the augmentation:
    // ||P(x) - Q(q)||^2 = ||sx||^(2^(m+1)) + ||sq||^(2^(m+1)) + m/2 - 2 sx.sq
    // where sx = (U/V) x and sq = (U/V) q.
    double sx2 = (U / V) * (U / V) * x.squared_norm();
    double sq2 = (U / V) * (U / V) * q.squared_norm();
    double raw_dot = 0.0;
    {
      auto const& xi = x.indices();
      auto const& qi = q.indices();
      std::size_t i = 0, j = 0;
      while (i < xi.size() && j < qi.size()) {
        if (xi[i] < qi[j]) ++i;
        else if (qi[j] < xi[i]) ++j;
        else raw_dot += x.weights()[i++] * q.weights()[j++];
      }
    }
    double expected = std::pow(sx2, double(1u << m)) + std::pow(sq2, double(1u << m)) +
                      m / 2.0 - 2.0 * (U / V) * (U / V) * raw_dot;
    CHECK(dense_dist2(fx, fq) == doctest::Approx(expected).epsilon(1e-9).scale(1e-9));
  }
}

TEST_CASE("augmentation rejects vectors whose scaled norm exceeds the cap") {
  const std::uint32_t D = 4;
  auto v = WeightedSparseVector::from_pairs({{0, 3.0}});
  // V = 2 -> scaled norm 0.8 * 1.5 = 1.2 > 1 >= U.
  try {
    transform_l2alsh(v, D, AugmentedRole::Data, 2, 0.8, 2.0);
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("exceeds") != std::string::npos);
  }
  CHECK_THROWS_AS(transform_signalsh(v, D, AugmentedRole::Data, 2, 0.8, 2.0),
                  ArgumentError);
  CHECK_THROWS_AS(transform_l2alsh(v, D, AugmentedRole::Data, 0, 0.8, 4.0), ArgumentError);
  CHECK_THROWS_AS(transform_l2alsh(v, D, AugmentedRole::Data, 2, 1.2, 4.0), ArgumentError);
}

TEST_CASE("collision estimators accept transformed inputs") {
  // Padded sets collide at a/(2M - a).
  HashScheme mh;
  mh.master_seed = 31;
  const std::uint32_t D = 50, M = 10;
  auto x = set_of({0, 1, 2, 3, 4, 5});
  auto q = set_of({2, 3, 4, 5, 6, 7});  // a = 4 -> 4/16 = 0.25
  auto px = transform_mh(x, D, M, MhRole::DataDouble);
  auto pq = transform_mh(q, D, M, MhRole::QueryDouble);
  double est = estimate_collision(mh, px, pq, 20000);
  INFO("padded collision estimate=", est);
  CHECK(std::fabs(est - 0.25) <= 0.02);

  // Augmented vectors route to the projection families.
  HashScheme srp;
  srp.kind = SchemeKind::SRP;
  srp.master_seed = 32;
  auto v = WeightedSparseVector::from_pairs({{0, 1.0}, {1, 1.0}});
  auto ax = transform_signalsh(v, D, AugmentedRole::Data, 2, 0.75, 2.0);
  auto aq = transform_signalsh(v, D, AugmentedRole::Query, 2, 0.75, 2.0);
  double same = estimate_collision(srp, ax, ax, 2000);
  CHECK(same == 1.0);
  double cross = estimate_collision(srp, ax, aq, 20000);
  CHECK(cross > 0.5);
  CHECK(cross < 1.0);

  HashScheme l2;
  l2.kind = SchemeKind::L2LSH;
  l2.master_seed = 33;
  l2.bucket_width = 2.5;
  CHECK(estimate_collision(l2, ax, ax, 2000) == 1.0);
  CHECK_THROWS_AS(estimate_collision(mh, ax, aq, 100), ArgumentError);
}

}  // TEST_SUITE
