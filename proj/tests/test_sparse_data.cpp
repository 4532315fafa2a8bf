#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <set>
#include <string>
#include <vector>

#include "amh/errors.hpp"
#include "amh/rng.hpp"
#include "amh/sparse_data.hpp"
#include "amh/weighted_vector.hpp"

using namespace amh;

TEST_SUITE("sparse_data") {

TEST_CASE("construction validates and canonicalizes") {
  auto s = SparseBinarySet::from_sorted_unique({1, 5, 9});
  CHECK(s.cardinality() == 3);
  CHECK(s.contains(5));
  CHECK_FALSE(s.contains(4));
  CHECK(s.max_index() == 9);

  CHECK_THROWS_AS(SparseBinarySet::from_sorted_unique({1, 5, 5}), ValidationError);
  CHECK_THROWS_AS(SparseBinarySet::from_sorted_unique({5, 1}), ValidationError);

  auto u = SparseBinarySet::from_unsorted({9, 1, 5, 1, 9});
  CHECK(u == s);

  CHECK(SparseBinarySet{}.empty());
  CHECK_THROWS_AS(SparseBinarySet{}.max_index(), EmptyInputError);
}

TEST_CASE("overlap measures match a std::set oracle") {
  rng::Sequence seq(77, rng::kTagCorpus);
  for (int rep = 0; rep < 200; ++rep) {
    std::set<std::uint32_t> a, b;
    auto na = seq.next_in(0, 40), nb = seq.next_in(0, 40);
    for (std::uint64_t i = 0; i < na; ++i) a.insert(static_cast<std::uint32_t>(seq.next_in(0, 60)));
    for (std::uint64_t i = 0; i < nb; ++i) b.insert(static_cast<std::uint32_t>(seq.next_in(0, 60)));
    auto x = SparseBinarySet::from_unsorted({a.begin(), a.end()});
    auto y = SparseBinarySet::from_unsorted({b.begin(), b.end()});

    std::vector<std::uint32_t> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    std::set<std::uint32_t> uni(a);
    uni.insert(b.begin(), b.end());

    CHECK(intersection_size(x, y) == inter.size());
    CHECK(union_size(x, y) == uni.size());
    if (!uni.empty()) {
      CHECK(resemblance(x, y) ==
            doctest::Approx(double(inter.size()) / double(uni.size())).epsilon(1e-15));
    }
  }
  CHECK(resemblance(SparseBinarySet{}, SparseBinarySet{}) == 1.0);
}

TEST_CASE("index-list parsing canonicalizes and reports bad lines") {
  Dataset d = parse_dataset_text("3 1 2\n\n7 7 0\n");
  REQUIRE(d.size() == 2);
  CHECK(d.records()[0].id == 0);
  CHECK(d.records()[0].set.indices() == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(d.records()[1].set.indices() == std::vector<std::uint32_t>{0, 7});
  CHECK(d.universe_dim() == 8);
  CHECK(d.max_cardinality() == 3);

  try {
    parse_dataset_text("1 2\n3 x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("svm parsing handles labels, 1-based indices, and binarization") {
  ParseOptions opts;
  opts.format = InputFormat::SvmSparse;

  Dataset d = parse_dataset_text("+1 1:1 4:1\n-1 2:1\n", opts);
  REQUIRE(d.size() == 2);
  CHECK(d.records()[0].set.indices() == std::vector<std::uint32_t>{0, 3});
  CHECK(d.records()[1].set.indices() == std::vector<std::uint32_t>{1});

  // Zero value means absent; 1-based input cannot contain index 0.
  Dataset z = parse_dataset_text("0 1:0 2:1\n", opts);
  CHECK(z.records()[0].set.indices() == std::vector<std::uint32_t>{1});
  CHECK_THROWS_AS(parse_dataset_text("0 0:1\n", opts), ParseError);

  // Non-binary values demand explicit binarization.
  try {
    parse_dataset_text("0 3:2\n", opts);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("binarize") != std::string::npos);
  }
  opts.binarize = true;
  Dataset b = parse_dataset_text("0 3:2 5:0.0\n", opts);
  CHECK(b.records()[0].set.indices() == std::vector<std::uint32_t>{2});
}

TEST_CASE("round trip through index-list text") {
  Dataset d = parse_dataset_text("5 1\n2 3 4\n");
  std::string text = dataset_to_index_list(d);
  CHECK(text == "1 5\n2 3 4\n");
  Dataset back = parse_dataset_text(text);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(back.records()[i].set == d.records()[i].set);
  }

  Dataset with_empty(4, {{0, SparseBinarySet{}}});
  CHECK_THROWS_AS(dataset_to_index_list(with_empty), ValidationError);
}

TEST_CASE("dimension override and dataset invariants") {
  ParseOptions opts;
  opts.dim_override = 100;
  Dataset d = parse_dataset_text("1 2\n", opts);
  CHECK(d.universe_dim() == 100);

  opts.dim_override = 2;
  CHECK_THROWS_AS(parse_dataset_text("1 2\n", opts), ValidationError);

  Dataset ds(10, {});
  ds.add_record(7, SparseBinarySet::from_sorted_unique({0, 9}));
  CHECK_THROWS_AS(ds.add_record(7, SparseBinarySet{}), ValidationError);
  CHECK_THROWS_AS(ds.add_record(8, SparseBinarySet::from_sorted_unique({10})),
                  ValidationError);
  CHECK(ds.max_cardinality() == 2);
}

TEST_CASE("stats report population moments and the largest record") {
  Dataset d = parse_dataset_text("0 1\n0 1 2 3\n");
  DatasetStats s = compute_stats(d);
  CHECK(s.n_records == 2);
  CHECK(s.universe_dim == 4);
  CHECK(s.mean_cardinality == doctest::Approx(3.0));
  CHECK(s.std_cardinality == doctest::Approx(1.0));
  CHECK(s.max_cardinality == 4);

  std::string csv = stats_to_csv(s);
  CHECK(csv.substr(0, csv.find('\n')) == "n,D,mean,std,M");
}

TEST_CASE("partition preserves records and is seed-deterministic") {
  std::string text;
  for (int i = 0; i < 30; ++i) text += std::to_string(i) + " " + std::to_string(i + 30) + "\n";
  Dataset d = parse_dataset_text(text);

  PartitionResult p = partition_dataset(d, 10, 5);
  CHECK(p.query.size() == 10);
  CHECK(p.train.size() == 20);
  CHECK(p.train.universe_dim() == d.universe_dim());
  CHECK(p.query.universe_dim() == d.universe_dim());

  std::set<std::int64_t> seen;
  for (const auto& r : p.train.records()) seen.insert(r.id);
  for (const auto& r : p.query.records()) seen.insert(r.id);
  CHECK(seen.size() == 30);

  PartitionResult p2 = partition_dataset(d, 10, 5);
  CHECK(p2.query.records()[0].id == p.query.records()[0].id);
  PartitionResult p3 = partition_dataset(d, 10, 6);
  bool same = true;
  for (std::size_t i = 0; i < 10; ++i) {
    same = same && p3.query.records()[i].id == p.query.records()[i].id;
  }
  CHECK_FALSE(same);

  CHECK_THROWS_AS(partition_dataset(d, 0, 1), ArgumentError);
  CHECK_THROWS_AS(partition_dataset(d, 30, 1), ArgumentError);
}

}  // TEST_SUITE

TEST_SUITE("weighted_vector") {

TEST_CASE("construction sorts, rejects, and drops zeros") {
  auto v = WeightedSparseVector::from_pairs({{5, 2.0}, {1, 1.5}, {9, 0.0}});
  CHECK(v.indices() == std::vector<std::uint32_t>{1, 5});
  CHECK(v.weights() == std::vector<double>{1.5, 2.0});
  CHECK(v.sum_weights() == doctest::Approx(3.5));
  CHECK(v.squared_norm() == doctest::Approx(1.5 * 1.5 + 4.0));

  CHECK_THROWS_AS(WeightedSparseVector::from_pairs({{1, 1.0}, {1, 2.0}}), ValidationError);
  CHECK_THROWS_AS(WeightedSparseVector::from_pairs({{1, -0.5}}), ValidationError);
}

TEST_CASE("weighted overlap matches a dense oracle") {
  rng::Sequence seq(4242, rng::kTagCorpus);
  for (int rep = 0; rep < 100; ++rep) {
    constexpr std::size_t kDim = 30;
    std::vector<double> a(kDim, 0.0), b(kDim, 0.0);
    std::vector<std::pair<std::uint32_t, double>> pa, pb;
    for (std::size_t i = 0; i < kDim; ++i) {
      if (seq.next_unit() < 0.4) {
        a[i] = seq.next_unit() * 3.0;
        if (a[i] > 0) pa.push_back({static_cast<std::uint32_t>(i), a[i]});
      }
      if (seq.next_unit() < 0.4) {
        b[i] = seq.next_unit() * 3.0;
        if (b[i] > 0) pb.push_back({static_cast<std::uint32_t>(i), b[i]});
      }
    }
    double smin = 0.0, smax = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) {
      smin += std::min(a[i], b[i]);
      smax += std::max(a[i], b[i]);
    }
    double expected = smax == 0.0 ? 1.0 : smin / smax;
    CHECK(weighted_jaccard(WeightedSparseVector::from_pairs(pa),
                           WeightedSparseVector::from_pairs(pb)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(weighted_jaccard(WeightedSparseVector{}, WeightedSparseVector{}) == 1.0);
}

}  // TEST_SUITE
