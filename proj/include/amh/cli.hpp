#pragma once

#include <string>
#include <vector>

namespace amh::cli {

// Command-line entry point (args exclude the program name).  Subcommands:
//   stats      — dataset summary CSV (n,D,mean,std,M)
//   partition  — seeded train/query split written as index-list files
//   estimate   — empirical vs. theoretical collision rates for set pairs
//   rho-curves — query-time exponent curves for the two theory schemes
//   rank       — hash-quality ranking experiment (precision/recall CSV)
//   bucket     — (K, L) bucketing sweep (fraction-vs-recall CSV)
// Returns the process exit code: 0 on success, nonzero with a one-line
// diagnostic on standard error otherwise.
int run(const std::vector<std::string>& args);

}  // namespace amh::cli
