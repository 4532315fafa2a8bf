#include "amh/theory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "amh/csv.hpp"
#include "amh/errors.hpp"

namespace amh::theory {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kSqrt2Pi = 2.50662827463100050242;

// Standard normal CDF via the complementary error function (absolute
// accuracy well below 1e-12 across the real line).
double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

void check_c(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw ArgumentError("approximation factor c must lie strictly in (0, 1)");
  }
}

void check_ratio(double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw ArgumentError("similarity ratio must lie in (0, 1]");
  }
}

// U^(2^(m+1)) by repeated squaring.
double u_power(double U, std::uint32_t m) {
  double p = U * U;
  for (std::uint32_t i = 0; i < m; ++i) p = p * p;
  return p;
}

}  // namespace

double f_r(double d, double r) {
  if (!(r > 0.0)) throw ArgumentError("bucket width r must be positive");
  if (d < 0.0) throw ArgumentError("distance must be nonnegative");
  if (d == 0.0) return 1.0;
  double q = r / d;
  return 1.0 - 2.0 * normal_cdf(-q) - (2.0 / (kSqrt2Pi * q)) * (1.0 - std::exp(-q * q / 2.0));
}

double rho_mh_alsh(double ratio, double c) {
  check_ratio(ratio);
  check_c(c);
  return std::log(ratio / (2.0 - ratio)) / std::log(c * ratio / (2.0 - c * ratio));
}

double rho_sign(double ratio, double c) {
  check_ratio(ratio);
  check_c(c);
  return std::log(1.0 - std::acos(ratio) / kPi) /
         std::log(1.0 - std::acos(c * ratio) / kPi);
}

double rho_minhash_q(double S0, double c, std::uint64_t f_q, std::uint64_t M) {
  check_c(c);
  if (!(S0 > 0.0)) throw ArgumentError("threshold S0 must be positive");
  if (f_q == 0 || M == 0) throw ArgumentError("cardinalities must be positive");
  double fq = static_cast<double>(f_q);
  double m = static_cast<double>(M);
  if (!(S0 < fq + m)) throw ArgumentError("S0 must be below f_q + M");
  if (!(c * S0 < fq)) {
    throw DomainError("theorem precondition violated: c*S0 must be below f_q");
  }
  return std::log(S0 / (fq + m - S0)) / std::log(c * S0 / fq);
}

double rho_mh_alsh_q(double S0, double c, std::uint64_t f_q, std::uint64_t M) {
  check_c(c);
  if (!(S0 > 0.0)) throw ArgumentError("threshold S0 must be positive");
  if (f_q == 0 || M == 0) throw ArgumentError("cardinalities must be positive");
  double fq = static_cast<double>(f_q);
  double m = static_cast<double>(M);
  if (!(S0 < fq + m)) throw ArgumentError("S0 must be below f_q + M");
  return std::log(S0 / (fq + m - S0)) / std::log(c * S0 / (fq + m - c * S0));
}

double rho_hs(double S0, double c, std::uint64_t D, std::uint64_t N) {
  check_c(c);
  if (D == 0) throw ArgumentError("universe size must be positive");
  if (N == 0) throw ArgumentError("fallback range must be positive");
  if (S0 < 0.0) throw ArgumentError("threshold S0 must be nonnegative");
  double d = static_cast<double>(D);
  if (S0 > d) throw ArgumentError("S0 cannot exceed the universe size");
  double n = static_cast<double>(N);
  double scale = (n - 1.0) / n;
  return std::log(scale * (S0 / d) + 1.0 / n) / std::log(scale * (c * S0 / d) + 1.0 / n);
}

double sign_alsh_zstar(std::uint32_t m) {
  if (m == 0) throw ArgumentError("augmentation depth m must be at least 1");
  double tm = std::pow(2.0, static_cast<double>(m));  // 2^m
  double md = static_cast<double>(m);
  double a = md - md * (tm / 2.0);  // m - m 2^(m-1)
  double disc = a * a + md * md * (tm - 1.0);
  double base = (a + std::sqrt(disc)) / (4.0 * (tm - 1.0));
  return std::pow(base, 1.0 / tm);
}

L2AlshOptimum optimize_rho_l2alsh(double S0, double c, double V) {
  check_c(c);
  if (!(S0 > 0.0)) throw ArgumentError("threshold S0 must be positive");
  if (!(V > 0.0)) throw ArgumentError("norm bound V must be positive");
  double s_unit = S0 / (V * V);  // S0 expressed against the norm bound
  L2AlshOptimum best;
  best.rho = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int ku = 1; ku <= 99; ++ku) {
    double U = ku / 100.0;
    double s = s_unit * U * U;
    for (std::uint32_t m = 1; m <= 5; ++m) {
      double p = u_power(U, m);  // U^(2^(m+1))
      // Constraint U^(2^(m+1)-2) V^2/S0 < 1 - c.
      if (!(p / (U * U) / s_unit < 1.0 - c)) continue;
      double rad_num = m / 2.0 - 2.0 * s + 2.0 * p;
      double rad_den = m / 2.0 - 2.0 * c * s;
      if (!(rad_num > 0.0 && rad_den > 0.0)) continue;
      double d_num = std::sqrt(rad_num);
      double d_den = std::sqrt(rad_den);
      for (int kr = 0; kr <= 45; ++kr) {
        double r = (5 + kr) / 10.0;
        double rho = std::log(f_r(d_num, r)) / std::log(f_r(d_den, r));
        if (rho < best.rho) {
          best = L2AlshOptimum{rho, U, m, r};
          found = true;
        }
      }
    }
  }
  if (!found) {
    throw InfeasibleError("no grid point satisfies the norm-scaling constraints");
  }
  return best;
}

SignAlshOptimum optimize_rho_signalsh(double S0, double c, double V) {
  check_c(c);
  if (!(S0 > 0.0)) throw ArgumentError("threshold S0 must be positive");
  if (!(V > 0.0)) throw ArgumentError("norm bound V must be positive");
  double s_unit = S0 / (V * V);
  SignAlshOptimum best;
  best.rho = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int ku = 1; ku <= 99; ++ku) {
    double U = ku / 100.0;
    double s = s_unit * U * U;
    for (std::uint32_t m = 1; m <= 5; ++m) {
      double p = u_power(U, m);
      double num_arg = s / (m / 4.0 + p);
      if (!(num_arg > 0.0 && num_arg < 1.0)) continue;
      double den_arg = std::min(c * s, sign_alsh_zstar(m));
      if (!(den_arg > 0.0 && den_arg < 1.0)) continue;
      double rho = std::log(1.0 - std::acos(num_arg) / kPi) /
                   std::log(1.0 - std::acos(den_arg) / kPi);
      if (!(rho > 0.0)) continue;
      if (rho < best.rho) {
        best = SignAlshOptimum{rho, U, m};
        found = true;
      }
    }
  }
  if (!found) {
    throw InfeasibleError("no grid point satisfies the norm-scaling constraints");
  }
  return best;
}

const char* rho_scheme_label(RhoCurveScheme s) {
  switch (s) {
    case RhoCurveScheme::MhAlsh:
      return "mh-alsh";
    case RhoCurveScheme::Sign:
      return "sign";
  }
  throw ArgumentError("unknown curve scheme");
}

std::vector<RhoCurve> emit_rho_curves(const std::vector<double>& ratios,
                                      const std::vector<double>& c_grid,
                                      const std::vector<RhoCurveScheme>& schemes) {
  for (std::size_t i = 1; i < c_grid.size(); ++i) {
    if (!(c_grid[i - 1] < c_grid[i])) {
      throw ArgumentError("c grid must be strictly increasing");
    }
  }
  std::vector<RhoCurve> curves;
  curves.reserve(schemes.size() * ratios.size());
  for (RhoCurveScheme scheme : schemes) {
    for (double ratio : ratios) {
      RhoCurve curve;
      curve.scheme = scheme;
      curve.ratio = ratio;
      curve.points.reserve(c_grid.size());
      for (double c : c_grid) {
        double rho = scheme == RhoCurveScheme::MhAlsh ? rho_mh_alsh(ratio, c)
                                                      : rho_sign(ratio, c);
        curve.points.emplace_back(c, rho);
      }
      curves.push_back(std::move(curve));
    }
  }
  return curves;
}

std::string rho_curves_to_csv(const std::vector<RhoCurve>& curves) {
  std::ostringstream out;
  out << "scheme,ratio,c,rho\n";
  for (const RhoCurve& curve : curves) {
    for (const auto& [c, rho] : curve.points) {
      out << rho_scheme_label(curve.scheme) << ',' << csv::format_double(curve.ratio)
          << ',' << csv::format_double(c) << ',' << csv::format_double(rho) << '\n';
    }
  }
  return out.str();
}

std::vector<double> default_ratio_grid() {
  std::vector<double> ratios;
  for (int k = 1; k <= 9; ++k) ratios.push_back(k / 10.0);
  ratios.push_back(0.95);
  return ratios;
}

std::vector<double> default_c_grid() {
  std::vector<double> cs;
  for (int k = 1; k <= 19; ++k) cs.push_back(k / 20.0);
  return cs;
}

}  // namespace amh::theory
