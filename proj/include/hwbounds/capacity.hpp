#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hwbounds/werner.hpp"

namespace hwb {

/// Per-channel bound families.
enum class Measure {
  e_r,        // one-copy REE (= one-copy RPPT)
  e_r2,       // two-copy REE, halved
  e_p_inf,    // regularised RPPT
  esq_tilde,  // squashed entanglement, purification bound
  esq_star,   // squashed entanglement, convexity bound
  k_best,     // pointwise min over {e_r2, esq_tilde, esq_star}
};

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view name);

double measure_value(Measure m, const WernerParams& p);

/// Converse bounds for one HW channel. k_bound is the minimum over the
/// admissible secret-key pool {E_R2, Esq_tilde, Esq_star}; values within
/// 1e-12 of the minimum count as tied for k_source, which resolves in that
/// order; k_bound itself is the exact minimum. q2_bound is the regularised
/// RPPT.
struct BoundReport {
  WernerParams params;
  double e_r;
  double e_r2;
  double e_p_inf;
  double esq_tilde;
  double esq_star;
  double k_bound;
  Measure k_bound_source;
  double q2_bound;
};

BoundReport channel_bounds(const WernerParams& p);

/// channel_bounds over a batch, in input order.
std::vector<BoundReport> channel_bounds_serial(std::span<const WernerParams> params);
std::vector<BoundReport> channel_bounds_parallel(std::span<const WernerParams> params);

/// K-pool minimum and the measure attaining it.
std::pair<double, Measure> best_k_bound(const WernerParams& p);

class NoCrossover : public std::runtime_error {
 public:
  NoCrossover(int d, std::string dominant);
  const std::string& dominant() const { return dominant_; }

 private:
  std::string dominant_;
};

/// min(Esq_tilde, Esq_star) - E_R2 at (eta, d).
double squashed_minus_ree(double eta, int d);

/// Every eta in (-1, 0) where squashed_minus_ree changes sign: a 200-point
/// pre-scan brackets sign changes, each bracket is bisected to width tol.
/// Throws NoCrossover when the sign never changes.
std::vector<double> crossover_etas(int d, double tol);

/// First entry of crossover_etas.
double crossover_eta(int d, double tol);

double binary_entropy(double q);

/// Dimension of the truncated output, given either directly or as
/// base^exponent so that log2 is computed as exponent * log2(base).
struct DimensionSpec {
  double log2_dim;

  static DimensionSpec of(double dim);
  static DimensionSpec power(double base, double exponent);
};

/// f(eps, d) = (eps/2) log2 d + (1 + eps/2) H2(eps / (2 + eps)).
double continuity_f(double epsilon, DimensionSpec dim);

class FiniteSizeParams {
 public:
  FiniteSizeParams(double epsilon, int d, long long n);

  double epsilon() const { return epsilon_; }
  int d() const { return d_; }
  long long n() const { return n_; }
  /// 1 - (eps/2) log2 d; must be positive.
  double denominator() const;

 private:
  double epsilon_;
  int d_;
  long long n_;
};

/// R_n <= [E_P(chi^{(x)n}) + (1 + eps/2) H2(eps/(2+eps))] / (n (1 - (eps/2) log2 d)).
double finite_rate_bound(const FiniteSizeParams& fs, double e_p_n);

/// n -> infinity limit of finite_rate_bound: e_p_inf / (1 - (eps/2) log2 d).
double finite_rate_limit(const FiniteSizeParams& fs, double e_p_inf);

}  // namespace hwb
