#include "amh/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amh/alsh_transforms.hpp"
#include "amh/common.hpp"
#include "amh/csv.hpp"
#include "amh/errors.hpp"
#include "amh/eval_harness.hpp"
#include "amh/hash_families.hpp"
#include "amh/parallel.hpp"
#include "amh/sparse_data.hpp"
#include "amh/theory.hpp"

namespace amh::cli {

namespace {

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw IoError("failed writing '" + path + "'");
}

struct InputFlags {
  std::string path;
  std::string format = "index-list";
  bool binarize = false;
  std::uint32_t dim = 0;  // 0: derive from the data
};

void add_input_flags(CLI::App* cmd, InputFlags& in, const std::string& name,
                     const std::string& what) {
  cmd->add_option(name, in.path, what)->required();
  cmd->add_option("--format", in.format, "Input format")
      ->check(CLI::IsMember({"index-list", "svm"}));
  cmd->add_flag("--binarize", in.binarize,
                "Treat any nonzero svm feature value as present");
  cmd->add_option("--dim", in.dim,
                  "Universe dimension override (default: 1 + largest index)");
}

Dataset load_dataset(const InputFlags& in) {
  ParseOptions opts;
  opts.format = in.format == "svm" ? InputFormat::SvmSparse : InputFormat::IndexList;
  opts.binarize = in.binarize;
  if (in.dim > 0) opts.dim_override = in.dim;
  return parse_dataset(in.path, opts);
}

// Rank/bucket need train and queries in one universe; grow the smaller one.
void harmonize_dims(Dataset& a, Dataset& b) {
  if (a.universe_dim() == b.universe_dim()) return;
  std::uint32_t dim = std::max(a.universe_dim(), b.universe_dim());
  a = Dataset(dim, std::vector<DatasetRecord>(a.records().begin(), a.records().end()));
  b = Dataset(dim, std::vector<DatasetRecord>(b.records().begin(), b.records().end()));
}

std::vector<ExperimentScheme> parse_schemes(const std::vector<std::string>& labels) {
  std::vector<ExperimentScheme> schemes;
  schemes.reserve(labels.size());
  for (const std::string& label : labels) schemes.push_back(parse_experiment_scheme(label));
  return schemes;
}

// ---------------------------------------------------------------------------
// estimate subcommand
// ---------------------------------------------------------------------------

std::string run_estimate(const std::string& scheme, const Dataset& pairs,
                         std::uint64_t K, std::uint64_t seed, std::uint32_t budget,
                         std::uint64_t sample_range) {
  if (pairs.size() % 2 != 0) {
    throw ValidationError("pair file must hold an even number of records "
                          "(consecutive lines form one pair)");
  }
  if (K == 0) throw ArgumentError("K must be at least 1");
  const std::size_t n_pairs = pairs.size() / 2;
  const std::uint32_t D = pairs.universe_dim();
  std::uint32_t M = budget != 0 ? budget : std::max<std::uint32_t>(1, pairs.max_cardinality());

  std::string out = "pair,f_x,f_y,a,empirical,theoretical\n";
  for (std::size_t p = 0; p < n_pairs; ++p) {
    const SparseBinarySet& x = pairs.records()[2 * p].set;
    const SparseBinarySet& y = pairs.records()[2 * p + 1].set;
    const double fx = static_cast<double>(x.cardinality());
    const double fy = static_cast<double>(y.cardinality());
    const double a = static_cast<double>(intersection_size(x, y));
    double empirical = 0.0;
    double theoretical = 0.0;
    HashScheme s;
    s.master_seed = seed;
    if (scheme == "minhash") {
      s.kind = SchemeKind::Minhash;
      empirical = estimate_collision(s, x, y, K);
      theoretical = resemblance(x, y);
    } else if (scheme == "mh-alsh") {
      s.kind = SchemeKind::Minhash;
      PaddedBinarySet px = transform_mh(x, D, M, MhRole::DataDouble);
      PaddedBinarySet qy = transform_mh(y, D, M, MhRole::QueryDouble);
      empirical = estimate_collision(s, px, qy, K);
      theoretical = a / (2.0 * M - a);
    } else if (scheme == "hs") {
      s.kind = SchemeKind::SampleHS;
      s.effective_dim = D;
      s.sample_range = sample_range;
      empirical = estimate_collision(s, x, y, K);
      const double N = static_cast<double>(sample_range);
      theoretical = ((N - 1.0) / N) * (a / D) + 1.0 / N;
    } else {  // srp
      s.kind = SchemeKind::SRP;
      empirical = estimate_collision(s, x, y, K);
      if (fx == 0.0 || fy == 0.0) {
        theoretical = (fx == 0.0 && fy == 0.0) ? 1.0 : 0.5;
      } else {
        const double cosine = a / std::sqrt(fx * fy);
        theoretical = 1.0 - std::acos(std::clamp(cosine, -1.0, 1.0)) / std::numbers::pi;
      }
    }
    out += std::to_string(p);
    out += ',';
    out += csv::format_double(fx);
    out += ',';
    out += csv::format_double(fy);
    out += ',';
    out += csv::format_double(a);
    out += ',';
    out += csv::format_double(empirical);
    out += ',';
    out += csv::format_double(theoretical);
    out += '\n';
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Minwise and asymmetric LSH toolkit: dataset statistics, collision "
               "estimators, theory curves, and retrieval experiments"};
  app.require_subcommand(1);

  // Executed after parsing so every subcommand shares one error path.
  std::function<void()> action;

  // --- stats ---------------------------------------------------------------
  auto* stats_cmd = app.add_subcommand("stats", "Dataset summary CSV (n,D,mean,std,M)");
  {
    auto in = std::make_shared<InputFlags>();
    auto output = std::make_shared<std::string>("-");
    add_input_flags(stats_cmd, *in, "--input", "Dataset file");
    stats_cmd->add_option("-o,--output", *output, "Output path ('-' for stdout)");
    stats_cmd->callback([&action, in, output] {
      action = [in, output] {
        write_output(*output, stats_to_csv(compute_stats(load_dataset(*in))));
      };
    });
  }

  // --- partition -----------------------------------------------------------
  auto* part_cmd =
      app.add_subcommand("partition", "Seeded train/query split into index-list files");
  {
    auto in = std::make_shared<InputFlags>();
    auto n_query = std::make_shared<std::uint64_t>(0);
    auto train_out = std::make_shared<std::string>();
    auto query_out = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    add_input_flags(part_cmd, *in, "--input", "Dataset file");
    part_cmd->add_option("--n-query", *n_query, "Records moved to the query split")
        ->required();
    part_cmd->add_option("--train-out", *train_out, "Train split path")->required();
    part_cmd->add_option("--query-out", *query_out, "Query split path")->required();
    part_cmd->add_option("--seed", *seed, "Shuffle seed")->envname("AMH_SEED");
    part_cmd->callback([&action, in, n_query, train_out, query_out, seed] {
      action = [in, n_query, train_out, query_out, seed] {
        PartitionResult split =
            partition_dataset(load_dataset(*in), static_cast<std::size_t>(*n_query), *seed);
        write_dataset(split.train, *train_out);
        write_dataset(split.query, *query_out);
      };
    });
  }

  // --- estimate --------------------------------------------------------------
  auto* est_cmd = app.add_subcommand(
      "estimate", "Empirical vs. theoretical collision rates for consecutive set pairs");
  {
    auto scheme = std::make_shared<std::string>("minhash");
    auto in = std::make_shared<InputFlags>();
    auto K = std::make_shared<std::uint64_t>(10000);
    auto seed = std::make_shared<std::uint64_t>(kDefaultSeed);
    auto budget = std::make_shared<std::uint32_t>(0);
    auto sample_range = std::make_shared<std::uint64_t>(kDefaultSampleRange);
    auto output = std::make_shared<std::string>("-");
    est_cmd->add_option("--scheme", *scheme, "Collision scheme")
        ->check(CLI::IsMember({"minhash", "mh-alsh", "hs", "srp"}));
    add_input_flags(est_cmd, *in, "--pair-file",
                    "Index-list file; consecutive lines form (data, query) pairs");
    est_cmd->add_option("--K", *K, "Hash evaluations per pair");
    est_cmd->add_option("--seed", *seed, "Hash seed")->envname("AMH_SEED");
    est_cmd->add_option("--budget", *budget,
                        "Padding budget M for mh-alsh (default: max cardinality)");
    est_cmd->add_option("--sample-range", *sample_range,
                        "Fallback value range N for the hs scheme");
    est_cmd->add_option("-o,--output", *output, "Output path ('-' for stdout)");
    est_cmd->callback([&action, scheme, in, K, seed, budget, sample_range, output] {
      action = [scheme, in, K, seed, budget, sample_range, output] {
        write_output(*output, run_estimate(*scheme, load_dataset(*in), *K, *seed,
                                           *budget, *sample_range));
      };
    });
  }

  // --- rho-curves ------------------------------------------------------------
  auto* rho_cmd = app.add_subcommand(
      "rho-curves", "Query-time exponent rho vs. approximation factor c");
  {
    auto ratios = std::make_shared<std::vector<double>>();
    auto c_grid = std::make_shared<std::vector<double>>();
    auto output = std::make_shared<std::string>("-");
    rho_cmd->add_option("--ratios", *ratios, "Similarity ratios S0/M (default grid)")
        ->delimiter(',');
    rho_cmd->add_option("--c-grid", *c_grid,
                        "Approximation factors, strictly increasing (default grid)")
        ->delimiter(',');
    rho_cmd->add_option("-o,--output", *output, "Output path ('-' for stdout)");
    rho_cmd->callback([&action, ratios, c_grid, output] {
      action = [ratios, c_grid, output] {
        const std::vector<double> r =
            ratios->empty() ? theory::default_ratio_grid() : *ratios;
        const std::vector<double> c = c_grid->empty() ? theory::default_c_grid() : *c_grid;
        write_output(*output, theory::rho_curves_to_csv(theory::emit_rho_curves(
                                  r, c, {theory::RhoCurveScheme::MhAlsh,
                                         theory::RhoCurveScheme::Sign})));
      };
    });
  }

  // --- shared experiment flags ----------------------------------------------
  struct ExperimentFlags {
    InputFlags train;
    InputFlags query;
    std::vector<std::string> schemes;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    std::uint32_t budget = 0;
    std::uint32_t l2_m = kDefaultL2AlshM;
    double l2_u = kDefaultL2AlshU;
    double l2_r = kDefaultL2AlshBucketWidth;
    std::uint32_t sign_m = kDefaultSignAlshM;
    double sign_u = kDefaultSignAlshU;
    std::string output = "-";
  };
  auto add_experiment_flags = [](CLI::App* cmd, ExperimentFlags& fl) {
    cmd->add_option("--train", fl.train.path, "Train dataset")->required();
    cmd->add_option("--query", fl.query.path, "Query dataset")->required();
    cmd->add_option("--format", fl.train.format, "Input format for both files")
        ->check(CLI::IsMember({"index-list", "svm"}));
    cmd->add_flag("--binarize", fl.train.binarize,
                  "Treat any nonzero svm feature value as present");
    cmd->add_option("--schemes", fl.schemes,
                    "Comma-separated scheme list "
                    "(minhash, mh-alsh, l2-alsh, sign-alsh)")
        ->delimiter(',');
    cmd->add_option("--seed", fl.seed, "Hash seed")->envname("AMH_SEED");
    cmd->add_option("--threads", fl.threads, "Worker cap (0: all cores)");
    cmd->add_option("--budget", fl.budget,
                    "Padding budget M override (default: max train cardinality)");
    cmd->add_option("--l2-m", fl.l2_m, "Euclidean augmentation depth m");
    cmd->add_option("--l2-U", fl.l2_u, "Euclidean augmentation scale U");
    cmd->add_option("--l2-r", fl.l2_r, "Euclidean bucket width r");
    cmd->add_option("--sign-m", fl.sign_m, "Sign augmentation depth m");
    cmd->add_option("--sign-U", fl.sign_u, "Sign augmentation scale U");
    cmd->add_option("-o,--output", fl.output, "Output path ('-' for stdout)");
  };
  auto experiment_setup = [](const ExperimentFlags& fl, Dataset& train, Dataset& queries,
                             ExperimentOptions& opt) {
    InputFlags qin = fl.train;  // share format/binarize flags across both files
    qin.path = fl.query.path;
    train = load_dataset(fl.train);
    queries = load_dataset(qin);
    harmonize_dims(train, queries);
    parallel::set_max_threads(fl.threads);
    opt.seed = fl.seed;
    opt.budget_override = fl.budget;
    opt.l2_m = fl.l2_m;
    opt.l2_U = fl.l2_u;
    opt.l2_r = fl.l2_r;
    opt.sign_m = fl.sign_m;
    opt.sign_U = fl.sign_u;
  };

  // --- rank ------------------------------------------------------------------
  auto* rank_cmd = app.add_subcommand(
      "rank", "Hash-quality ranking experiment (precision at recall levels)");
  {
    auto fl = std::make_shared<ExperimentFlags>();
    auto k_list = std::make_shared<std::vector<std::uint32_t>>();
    auto T = std::make_shared<std::uint32_t>(100);
    add_experiment_flags(rank_cmd, *fl);
    rank_cmd->add_option("--K", *k_list, "Hash evaluations per record (list)")
        ->delimiter(',');
    rank_cmd->add_option("--T", *T, "Gold-standard size");
    rank_cmd->callback([&action, fl, k_list, T, experiment_setup] {
      action = [fl, k_list, T, experiment_setup] {
        Dataset train(1, {});
        Dataset queries(1, {});
        ExperimentOptions opt;
        experiment_setup(*fl, train, queries, opt);
        std::vector<std::string> labels =
            fl->schemes.empty()
                ? std::vector<std::string>{"minhash", "mh-alsh", "l2-alsh", "sign-alsh"}
                : fl->schemes;
        std::vector<std::uint32_t> ks =
            k_list->empty() ? std::vector<std::uint32_t>{32, 64, 128} : *k_list;
        RankingReport report =
            ranking_experiment(train, queries, parse_schemes(labels), ks, *T, opt);
        write_output(fl->output, ranking_to_csv(report));
      };
    });
  }

  // --- bucket ----------------------------------------------------------------
  auto* bucket_cmd = app.add_subcommand(
      "bucket", "(K, L) bucketing sweep: fraction scanned at each recall level");
  {
    auto fl = std::make_shared<ExperimentFlags>();
    auto t_list = std::make_shared<std::vector<std::uint32_t>>();
    auto k_grid = std::make_shared<std::vector<std::uint32_t>>();
    auto l_grid = std::make_shared<std::vector<std::uint32_t>>();
    auto full_grid = std::make_shared<bool>(false);
    add_experiment_flags(bucket_cmd, *fl);
    bucket_cmd->add_option("--T", *t_list, "Gold-standard sizes (list)")->delimiter(',');
    bucket_cmd->add_option("--k-grid", *k_grid, "Explicit K grid")->delimiter(',');
    bucket_cmd->add_option("--l-grid", *l_grid, "Explicit L grid")->delimiter(',');
    bucket_cmd->add_flag("--full-grid", *full_grid,
                         "Sweep K in 1..40 and L in 1..400 (hours of compute)");
    bucket_cmd->callback([&action, fl, t_list, k_grid, l_grid, full_grid,
                          experiment_setup] {
      action = [fl, t_list, k_grid, l_grid, full_grid, experiment_setup] {
        Dataset train(1, {});
        Dataset queries(1, {});
        ExperimentOptions opt;
        experiment_setup(*fl, train, queries, opt);
        std::vector<std::string> labels =
            fl->schemes.empty() ? std::vector<std::string>{"minhash", "mh-alsh"}
                                : fl->schemes;
        std::vector<std::uint32_t> ks =
            !k_grid->empty() ? *k_grid
                             : (*full_grid ? full_bucketing_k_range()
                                           : default_bucketing_k_range());
        std::vector<std::uint32_t> ls =
            !l_grid->empty() ? *l_grid
                             : (*full_grid ? full_bucketing_l_range()
                                           : default_bucketing_l_range());
        std::vector<std::uint32_t> ts =
            t_list->empty() ? std::vector<std::uint32_t>{10} : *t_list;
        BucketingReport report = bucketing_experiment(train, queries,
                                                      parse_schemes(labels), ks, ls, ts, opt);
        write_output(fl->output, bucketing_to_csv(report));
      };
    });
  }

  // --- parse and dispatch ------------------------------------------------------
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("amh");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    if (action) action();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace amh::cli
