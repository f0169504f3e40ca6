#include "hwbounds/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hwbounds/measures.hpp"
#include "hwbounds/parallel.hpp"

namespace hwb {

namespace {

constexpr int kCrossoverScan = 200;
constexpr double kSignDeadband = 1e-12;
constexpr double kTieTolerance = 1e-12;

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::e_r: return "E_R";
    case Measure::e_r2: return "E_R2";
    case Measure::e_p_inf: return "E_P_inf";
    case Measure::esq_tilde: return "Esq_tilde";
    case Measure::esq_star: return "Esq_star";
    case Measure::k_best: return "k_best";
  }
  return "?";
}

Measure parse_measure(std::string_view name) {
  for (Measure m : {Measure::e_r, Measure::e_r2, Measure::e_p_inf, Measure::esq_tilde,
                    Measure::esq_star, Measure::k_best}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown measure '" + std::string(name) +
                              "' (expected E_R, E_R2, E_P_inf, Esq_tilde, Esq_star, k_best)");
}

std::pair<double, Measure> best_k_bound(const WernerParams& p) {
  const std::pair<double, Measure> pool[] = {{ree_two_copy(p), Measure::e_r2},
                                             {squashed_purification_bound(p), Measure::esq_tilde},
                                             {squashed_convexity_bound(p), Measure::esq_star}};
  double low = pool[0].first;
  for (const auto& [v, m] : pool) low = std::min(low, v);
  // The value is the exact minimum; only the label honours the tie tolerance.
  for (const auto& [v, m] : pool) {
    if (v <= low + kTieTolerance) return {low, m};
  }
  return {low, Measure::e_r2};
}

double measure_value(Measure m, const WernerParams& p) {
  switch (m) {
    case Measure::e_r: return ree_one_copy(p);
    case Measure::e_r2: return ree_two_copy(p);
    case Measure::e_p_inf: return rppt_regularised(p);
    case Measure::esq_tilde: return squashed_purification_bound(p);
    case Measure::esq_star: return squashed_convexity_bound(p);
    case Measure::k_best: return best_k_bound(p).first;
  }
  throw std::invalid_argument("bad measure");
}

BoundReport channel_bounds(const WernerParams& p) {
  const double e_r2 = ree_two_copy(p);
  const double tilde = squashed_purification_bound(p);
  const double star = squashed_convexity_bound(p);
  const auto [k, source] = best_k_bound(p);
  const double e_p_inf = rppt_regularised(p);
  return {p, ree_one_copy(p), e_r2, e_p_inf, tilde, star, k, source, e_p_inf};
}

namespace {

template <class Map>
std::vector<BoundReport> batch(std::span<const WernerParams> params, Map map) {
  std::vector<std::optional<BoundReport>> slots(params.size());
  map(params.size(), [&](std::size_t i) { return channel_bounds(params[i]); }, slots);
  std::vector<BoundReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(*s);
  return out;
}

}  // namespace

std::vector<BoundReport> channel_bounds_serial(std::span<const WernerParams> params) {
  return batch(params, [](std::size_t n, auto&& f, auto& out) { kernels::map_serial(n, f, out); });
}

std::vector<BoundReport> channel_bounds_parallel(std::span<const WernerParams> params) {
  return batch(params,
               [](std::size_t n, auto&& f, auto& out) { kernels::map_parallel(n, f, out); });
}

NoCrossover::NoCrossover(int d, std::string dominant)
    : std::runtime_error("no crossover on (-1, 0) for d = " + std::to_string(d) + "; " +
                         dominant + " bounds are lower throughout"),
      dominant_(std::move(dominant)) {}

double squashed_minus_ree(double eta, int d) {
  const WernerParams p(eta, d);
  return std::min(squashed_purification_bound(p), squashed_convexity_bound(p)) -
         ree_two_copy(p);
}

std::vector<double> crossover_etas(int d, double tol) {
  if (d < 3) throw std::invalid_argument("crossover_eta: requires d >= 3");
  if (!(tol > 0.0)) throw std::invalid_argument("crossover_eta: tol must be positive");

  std::vector<double> found;
  double prev_eta = 0.0;
  int prev_sign = 0;
  int any_sign = 0;
  for (int i = 0; i < kCrossoverScan; ++i) {
    const double eta = -1.0 + (i + 0.5) / kCrossoverScan;
    const double f = squashed_minus_ree(eta, d);
    if (std::abs(f) <= kSignDeadband) continue;
    const int sign = f > 0.0 ? 1 : -1;
    if (any_sign == 0) any_sign = sign;
    if (prev_sign != 0 && sign != prev_sign) {
      double lo = prev_eta, hi = eta;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = squashed_minus_ree(mid, d);
        if ((fm > 0.0 ? 1 : -1) == prev_sign) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      found.push_back(0.5 * (lo + hi));
    }
    prev_sign = sign;
    prev_eta = eta;
  }
  if (found.empty()) throw NoCrossover(d, any_sign < 0 ? "squashed" : "REE");
  return found;
}

double crossover_eta(int d, double tol) { return crossover_etas(d, tol).front(); }

double binary_entropy(double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  }
  if (q == 0.0 || q == 1.0) return 0.0;
  return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

DimensionSpec DimensionSpec::of(double dim) {
  if (!(dim >= 2.0)) throw std::invalid_argument("dimension must be >= 2");
  return {std::log2(dim)};
}

DimensionSpec DimensionSpec::power(double base, double exponent) {
  if (!(base >= 2.0) || !(exponent > 0.0)) {
    throw std::invalid_argument("dimension base must be >= 2 and exponent positive");
  }
  return {exponent * std::log2(base)};
}

double continuity_f(double epsilon, DimensionSpec dim) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("continuity_f: epsilon must be >= 0");
  return epsilon / 2.0 * dim.log2_dim +
         (1.0 + epsilon / 2.0) * binary_entropy(epsilon / (2.0 + epsilon));
}

FiniteSizeParams::FiniteSizeParams(double epsilon, int d, long long n)
    : epsilon_(epsilon), d_(d), n_(n) {
  if (!(epsilon >= 0.0 && epsilon < 2.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 2)");
  }
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(denominator() > 0.0)) {
    throw std::domain_error("1 - (eps/2) log2 d must be positive");
  }
}

double FiniteSizeParams::denominator() const {
  return 1.0 - epsilon_ / 2.0 * std::log2(static_cast<double>(d_));
}

double finite_rate_bound(const FiniteSizeParams& fs, double e_p_n) {
  const double eps = fs.epsilon();
  const double correction = (1.0 + eps / 2.0) * binary_entropy(eps / (2.0 + eps));
  return (e_p_n + correction) / (static_cast<double>(fs.n()) * fs.denominator());
}

double finite_rate_limit(const FiniteSizeParams& fs, double e_p_inf) {
  return e_p_inf / fs.denominator();
}

}  // namespace hwb
