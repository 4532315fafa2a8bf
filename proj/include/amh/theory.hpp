#pragma once

// Closed-form collision probabilities and search exponents (rho) for the
// implemented hash schemes, the constrained grid optimizations for the two
// norm-scaling transforms, and the rho-vs-c curve emitter.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace amh::theory {

// Collision probability of the Euclidean bucket hash at distance d with
// bucket width r: 1 - 2*Phi(-r/d) - (2 / (sqrt(2 pi) r/d)) (1 - exp(-r^2/(2 d^2))).
// Strictly decreasing in d; f_r(0) = 1 by convention.
double f_r(double d, double r);

// Exponent of padded minwise hashing at similarity ratio = S0/M:
// log(ratio/(2-ratio)) / log(c*ratio/(2 - c*ratio)).
double rho_mh_alsh(double ratio, double c);

// Exponent of sign random projections at cosine `ratio`:
// log(1 - acos(ratio)/pi) / log(1 - acos(c*ratio)/pi).
double rho_sign(double ratio, double c);

// Query-conditioned exponent of plain minwise hashing at intersection
// threshold S0: log(S0/(f_q + M - S0)) / log(c S0 / f_q).  Requires
// c*S0 < f_q (otherwise the scheme separates nothing and the exponent is
// undefined: DomainError "theorem precondition violated").
double rho_minhash_q(double S0, double c, std::uint64_t f_q, std::uint64_t M);

// Query-conditioned exponent of padded minwise hashing:
// log(S0/(f_q + M - S0)) / log(c S0 / (f_q + M - c S0)).
double rho_mh_alsh_q(double S0, double c, std::uint64_t f_q, std::uint64_t M);

// Exponent of the sampled-coordinate scheme over universe size D with
// fallback range N: log(((N-1)/N)(S0/D) + 1/N) / log(((N-1)/N)(c S0/D) + 1/N).
double rho_hs(double S0, double c, std::uint64_t D, std::uint64_t N);

// The similarity cap z* used by the sign-variant optimization's denominator.
double sign_alsh_zstar(std::uint32_t m);

struct L2AlshOptimum {
  double rho = 0.0;
  double U = 0.0;
  std::uint32_t m = 0;
  double r = 0.0;
};

// Grid search over U in {0.01..0.99 step 0.01}, m in {1..5}, r in {0.5..5.0
// step 0.1} minimizing log F_r(sqrt(m/2 - 2 S0 U^2/V^2 + 2 U^(2^(m+1)))) /
// log F_r(sqrt(m/2 - 2 c S0 U^2/V^2)), subject to
// U^(2^(m+1)-2) V^2/S0 < 1 - c and positive radicands.  Deterministic
// lexicographic (U, m, r) tie-break; throws InfeasibleError when no grid
// point qualifies.
L2AlshOptimum optimize_rho_l2alsh(double S0, double c, double V);

struct SignAlshOptimum {
  double rho = 0.0;
  double U = 0.0;
  std::uint32_t m = 0;
};

// Grid search over U in {0.01..0.99 step 0.01} and m in {1..5} minimizing
// log(1 - acos((S0 U^2/V^2) / (m/4 + U^(2^(m+1))))/pi) /
// log(1 - acos(min{c S0 U^2/V^2, z*})/pi); points with a numerator argument
// outside (0, 1) are infeasible.  Deterministic (U, m) tie-break.
SignAlshOptimum optimize_rho_signalsh(double S0, double c, double V);

enum class RhoCurveScheme { MhAlsh, Sign };

const char* rho_scheme_label(RhoCurveScheme s);

struct RhoCurve {
  RhoCurveScheme scheme = RhoCurveScheme::MhAlsh;
  double ratio = 0.0;                            // fixed S0/M (or cosine)
  std::vector<std::pair<double, double>> points;  // (c, rho), c ascending
};

// One curve per (scheme, ratio) over the c grid.  c_grid must be strictly
// increasing inside (0, 1); ratios must lie in (0, 1].
std::vector<RhoCurve> emit_rho_curves(const std::vector<double>& ratios,
                                      const std::vector<double>& c_grid,
                                      const std::vector<RhoCurveScheme>& schemes);

// Header "scheme,ratio,c,rho"; floats with 6 significant digits.
std::string rho_curves_to_csv(const std::vector<RhoCurve>& curves);

std::vector<double> default_ratio_grid();  // {0.1, ..., 0.9, 0.95}
std::vector<double> default_c_grid();      // {0.05, ..., 0.95 step 0.05}

}  // namespace amh::theory
