#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <doctest.h>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amh/cli.hpp"
#include "amh/sparse_data.hpp"

using namespace amh;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::string tmp(const char* stem) { return std::string("/tmp/amh_cli_") + stem; }

// A small clustered corpus in index-list text form.
std::string tiny_corpus_text(int n, int stride) {
  std::string text;
  for (int i = 0; i < n; ++i) {
    int base = (i % 5) * stride;
    text += std::to_string(base) + " " + std::to_string(base + 1) + " " +
            std::to_string(base + 2 + i % 3);
    if (i % 2 == 0) text += " " + std::to_string(base + 7);
    text += "\n";
  }
  return text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("rho-curves emits the default and restricted grids") {
  std::string out = tmp("rho.csv");
  REQUIRE(cli::run({"rho-curves", "-o", out}) == 0);
  std::string text = slurp(out);
  // Header + 2 schemes x 10 ratios x 19 c values.
  CHECK(line_count(text) == 1 + 2 * 10 * 19);
  CHECK(text.substr(0, text.find('\n')) == "scheme,ratio,c,rho");

  REQUIRE(cli::run({"rho-curves", "--ratios", "0.5", "--c-grid", "0.5", "-o", out}) == 0);
  text = slurp(out);
  CHECK(line_count(text) == 3);
  CHECK(text.find("mh-alsh,0.5,0.5,0.564575") != std::string::npos);
  CHECK(text.find("sign,0.5,0.5,0.745361") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("stats matches the library computation") {
  std::string in = tmp("stats_in.txt");
  std::string out = tmp("stats_out.csv");
  spit(in, "0 1\n0 1 2 3\n");
  REQUIRE(cli::run({"stats", "--input", in, "-o", out}) == 0);
  CHECK(slurp(out) == stats_to_csv(compute_stats(parse_dataset(in))));
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST_CASE("estimate reports the exact theoretical rate alongside the empirical one") {
  std::string in = tmp("pairs.txt");
  std::string out = tmp("est.csv");
  spit(in, "0 1\n0 1 2 3\n");
  REQUIRE(cli::run({"estimate", "--scheme", "minhash", "--pair-file", in, "--K", "2000",
                    "-o", out}) == 0);
  std::string text = slurp(out);
  CHECK(text.substr(0, text.find('\n')) == "pair,f_x,f_y,a,empirical,theoretical");
  // One pair -> one data row; resemblance 2/4 prints as 0.5.
  CHECK(line_count(text) == 2);
  std::string row = text.substr(text.find('\n') + 1);
  CHECK(row.substr(0, 8) == "0,2,4,2,");
  CHECK(row.find(",0.5\n") != std::string::npos);

  // Odd record count cannot form pairs.
  spit(in, "0 1\n0 1 2\n5\n");
  CHECK(cli::run({"estimate", "--pair-file", in, "-o", out}) != 0);
  std::remove(in.c_str());
  std::remove(out.c_str());
}

TEST_CASE("experiments are reproducible byte for byte") {
  std::string train = tmp("train.txt");
  std::string query = tmp("query.txt");
  std::string out1 = tmp("rank1.csv");
  std::string out2 = tmp("rank2.csv");
  spit(train, tiny_corpus_text(60, 9));
  spit(query, tiny_corpus_text(6, 9));

  std::vector<std::string> rank_args{"rank",  "--train", train, "--query", query,
                                     "--K",   "16",      "--T", "3",       "--schemes",
                                     "minhash,mh-alsh"};
  auto with_output = [&](const std::string& path) {
    std::vector<std::string> args = rank_args;
    args.push_back("-o");
    args.push_back(path);
    return args;
  };
  REQUIRE(cli::run(with_output(out1)) == 0);
  REQUIRE(cli::run(with_output(out2)) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1).substr(0, slurp(out1).find('\n')) == "scheme,K,recall,precision");

  // Worker cap must not change results.
  auto threaded = with_output(out2);
  threaded.push_back("--threads");
  threaded.push_back("2");
  REQUIRE(cli::run(threaded) == 0);
  CHECK(slurp(out1) == slurp(out2));

  // Bucketing, same drill.
  std::vector<std::string> bucket_args{
      "bucket", "--train", train,     "--query",  query, "--T", "3",
      "--k-grid", "1,2",   "--l-grid", "1,2,4",   "-o",  out1};
  REQUIRE(cli::run(bucket_args) == 0);
  std::string btext = slurp(out1);
  CHECK(btext.substr(0, btext.find('\n')) == "scheme,T,recall_level,fraction,bestK,bestL");
  bucket_args.back() = out2;
  REQUIRE(cli::run(bucket_args) == 0);
  CHECK(btext == slurp(out2));

  std::remove(train.c_str());
  std::remove(query.c_str());
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("the seed environment variable is honored and the flag overrides it") {
  std::string in = tmp("seed_pairs.txt");
  std::string base = tmp("seed_base.csv");
  std::string env7 = tmp("seed_env7.csv");
  std::string flag7 = tmp("seed_flag7.csv");
  std::string flag1 = tmp("seed_flag1.csv");
  spit(in, "0 1 2\n1 2 3 4 5\n0 7\n7 8 9\n");

  REQUIRE(cli::run({"estimate", "--pair-file", in, "--K", "2000", "-o", base}) == 0);
  REQUIRE(cli::run({"estimate", "--pair-file", in, "--K", "2000", "--seed", "7", "-o",
                    flag7}) == 0);

  setenv("AMH_SEED", "7", 1);
  REQUIRE(cli::run({"estimate", "--pair-file", in, "--K", "2000", "-o", env7}) == 0);
  REQUIRE(cli::run({"estimate", "--pair-file", in, "--K", "2000", "--seed", "1", "-o",
                    flag1}) == 0);
  unsetenv("AMH_SEED");

  CHECK(slurp(env7) == slurp(flag7));       // env value used
  CHECK(slurp(env7) != slurp(base));        // and it changed the result
  CHECK(slurp(flag1) != slurp(env7));       // explicit flag wins over env
  for (const auto& p : {in, base, env7, flag7, flag1}) std::remove(p.c_str());
}

TEST_CASE("partition writes both splits through the command line") {
  std::string in = tmp("part_in.txt");
  std::string tr = tmp("part_train.txt");
  std::string qu = tmp("part_query.txt");
  spit(in, tiny_corpus_text(20, 11));
  REQUIRE(cli::run({"partition", "--input", in, "--n-query", "5", "--train-out", tr,
                    "--query-out", qu, "--seed", "3"}) == 0);
  CHECK(line_count(slurp(tr)) == 15);
  CHECK(line_count(slurp(qu)) == 5);
  for (const auto& p : {in, tr, qu}) std::remove(p.c_str());
}

TEST_CASE("bad invocations fail without crashing") {
  CHECK(cli::run({}) != 0);
  CHECK(cli::run({"no-such-command"}) != 0);
  CHECK(cli::run({"stats", "--input", "/nonexistent/path.txt"}) != 0);
  CHECK(cli::run({"estimate", "--scheme", "bogus", "--pair-file", "x"}) != 0);
  CHECK(cli::run({"rank", "--train", "/nonexistent/a", "--query", "/nonexistent/b"}) != 0);
}

}  // TEST_SUITE
