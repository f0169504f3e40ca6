#include "hwbounds/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hwb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kConeSlack = 1e-10;
constexpr double kRegionSlack = 1e-12;

// p log2 p with 0 log 0 = 0.
double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double clamp0(double v) { return std::max(v, 0.0); }

// sum_i y_i log2(y_i / x_i); terms with y_i = 0 vanish.
double relative_entropy_classical(std::span<const double> y, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] <= 0.0) continue;
    if (!(x[i] > 0.0)) return kInf;
    s += y[i] * std::log2(y[i] / x[i]);
  }
  return s;
}

// In place: v <- M^{(x)n} v, M acting on every bit axis of the index.
void apply_cone_matrix(std::vector<double>& v, std::size_t n, int d) {
  const double r = (d - 1.0) / (d + 1.0);
  for (std::size_t bit = 0; bit < n; ++bit) {
    const std::size_t stride = std::size_t{1} << bit;
    for (std::size_t mask = 0; mask < v.size(); ++mask) {
      if (mask & stride) continue;
      const double a = v[mask];
      const double b = v[mask | stride];
      v[mask] = -a + b;
      v[mask | stride] = a + r * b;
    }
  }
}

std::vector<double> expand(std::span<const double> x) {
  const std::size_t n = x.size() - 1;
  std::vector<double> out(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    out[mask] = x[k] / binomial(n, k);
  }
  return out;
}

void require_copies(std::size_t n) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("number of copies must be 1, 2 or 3, got " +
                                std::to_string(n));
  }
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

SymmetricPPTPoint::SymmetricPPTPoint(std::vector<double> x) : x_(std::move(x)) {
  if (x_.size() < 2) throw std::invalid_argument("symmetric point needs n >= 1");
  double sum = 0.0;
  for (double xi : x_) {
    if (!(xi >= -1e-12)) throw std::invalid_argument("symmetric point has a negative entry");
    sum += xi;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("symmetric point entries must sum to 1");
  }
}

std::vector<double> SymmetricPPTPoint::expanded() const { return expand(x_); }

double ree_one_copy(const WernerParams& p) {
  const double eta = p.eta();
  if (eta >= 0.0) return 0.0;
  return clamp0(0.5 * (plogp(1.0 + eta) + plogp(1.0 - eta)));
}

double rppt_regularised(const WernerParams& p) {
  const double eta = p.eta();
  const double d = p.d();
  if (eta >= 0.0) return 0.0;
  if (eta >= -2.0 / d) return ree_one_copy(p);
  const double tail = (1.0 + eta) > 0.0
                          ? (1.0 + eta) / 2.0 * std::log2((d - 2.0) / (d + 2.0))
                          : 0.0;
  return clamp0(std::log2((d + 2.0) / d) + tail);
}

DensityMatrix sigma_x_state(const SymmetricPPTPoint& x, int d) {
  const std::size_t n = x.n();
  std::size_t dim = 1;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    dim *= static_cast<std::size_t>(d);
    if (dim > kMaxSigmaDim) {
      throw std::invalid_argument("sigma_x_state: dimension d^(2n) exceeds 4096");
    }
  }
  const Matrix wm = werner_state(WernerParams(-1.0, d)).matrix();
  const Matrix wp = werner_state(WernerParams(1.0, d)).matrix();
  const std::vector<double> weights = x.expanded();
  const auto edim = static_cast<Eigen::Index>(dim);
  Matrix sigma = Matrix::Zero(edim, edim);
  for (std::size_t mask = 0; mask < weights.size(); ++mask) {
    if (weights[mask] == 0.0) continue;
    Matrix term = Matrix::Identity(1, 1);
    for (std::size_t copy = 0; copy < n; ++copy) {
      term = kron(term, (mask >> copy) & 1u ? wp : wm);
    }
    sigma += weights[mask] * term;
  }
  return DensityMatrix::trusted(std::move(sigma));
}

std::vector<double> ppt_cone_rows(const SymmetricPPTPoint& x, int d) {
  std::vector<double> v = x.expanded();
  apply_cone_matrix(v, x.n(), d);
  return v;
}

bool ppt_cone_check(const SymmetricPPTPoint& x, int d) {
  const auto rows = ppt_cone_rows(x, d);
  return std::all_of(rows.begin(), rows.end(), [](double r) { return r >= -kConeSlack; });
}

std::vector<double> ncopy_weights(std::size_t n, double eta) {
  std::vector<double> y(n + 1);
  const double minus = (1.0 - eta) / 2.0;
  const double plus = (1.0 + eta) / 2.0;
  for (std::size_t i = 0; i <= n; ++i) {
    y[i] = binomial(n, i) * std::pow(minus, static_cast<double>(n - i)) *
           std::pow(plus, static_cast<double>(i));
  }
  return y;
}

double ncopy_objective(double eta, const SymmetricPPTPoint& x) {
  if (!(eta >= -1.0 && eta <= 1.0)) throw std::invalid_argument("eta out of range [-1, 1]");
  const auto y = ncopy_weights(x.n(), eta);
  return relative_entropy_classical(y, x.x());
}

TwoCopySolution ree_two_copy_closed(const WernerParams& p) {
  const double d = p.d();
  const double eta = p.eta();
  if (p.d() < 3 || eta > -2.0 / d + kRegionSlack) {
    throw std::invalid_argument(
        "ree_two_copy_closed: requires d >= 3 and eta <= -2/d (use ree_two_copy)");
  }
  const double e2 = eta * eta;
  const double theta = std::pow(d, 4) * (e2 + 1.0) * (e2 + 1.0) -
                       4.0 * std::pow(d, 3) * eta * (e2 - 3.0) -
                       4.0 * d * d * (e2 * e2 + 3.0 * e2 - 1.0) +
                       8.0 * d * eta * (e2 - 3.0) + 4.0 * (e2 + 1.0) * (e2 + 1.0);
  const double root = std::sqrt(theta);
  double x0 = (d * d * (e2 + 1.0) + root - 2.0 * d * (eta - 2.0) - 2.0 * e2 - 2.0) /
              (8.0 * d * (d + 2.0));
  double x1 = -(d * d * (e2 - 3.0) + root - 2.0 * d * eta - 2.0 * e2 + 6.0) /
              (4.0 * (d * d - 4.0));
  // Rounding can leave x1 at -1e-17 on the x1 = 0 face.
  if (x1 < 0.0 && x1 > -1e-12) x1 = 0.0;
  const auto y = ncopy_weights(2, eta);
  const double x[3] = {x0, x1, 1.0 - x0 - x1};
  return {theta, x0, x1, relative_entropy_classical(y, x) / 2.0};
}

Polytope two_copy_polytope(int d) {
  const double dd = d;
  Polytope poly;
  poly.a.resize(6, 2);
  poly.b.resize(6);
  poly.a << 0.0, 2.0,                         // 1 - 2 x1 >= 0
      2.0 * dd, dd - 2.0,                     // (d-1) - 2d x0 + (2-d) x1 >= 0
      -4.0 * dd, -2.0 * (dd - 1.0),           // (d-1)^2 + 4d x0 + 2(d-1) x1 >= 0
      1.0, 1.0,                               // x0 + x1 <= 1
      -1.0, 0.0,                              // x0 >= 0
      0.0, -1.0;                              // x1 >= 0
  poly.b << 1.0, dd - 1.0, (dd - 1.0) * (dd - 1.0), 1.0, 0.0, 0.0;
  return poly;
}

namespace {

// Objective over z = (x_0..x_{n-1}), x_n = 1 - sum(z), divided by n.
Objective ncopy_rate_objective(std::size_t n, double eta) {
  auto y = ncopy_weights(n, eta);
  return [y = std::move(y), n](std::span<const double> z) {
    double x[4];
    double rest = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = z[i];
      rest -= z[i];
    }
    x[n] = rest;
    return relative_entropy_classical(y, std::span<const double>(x, n + 1)) /
           static_cast<double>(n);
  };
}

double minimise_over(const Objective& f, const Polytope& poly, std::size_t grid_points,
                     double tol, std::vector<double>* argmin) {
  const std::vector<double> lo(poly.dim(), 0.0), hi(poly.dim(), 1.0);
  const GridScanResult coarse = grid_scan_parallel(f, poly, lo, hi, grid_points);
  const ConvexMinimum fine = minimize_convex(f, poly, std::min(tol, 1e-10));
  const bool refined = fine.value <= coarse.value;
  if (argmin) *argmin = refined ? fine.argmin : coarse.argmin;
  return refined ? fine.value : coarse.value;
}

}  // namespace

TwoCopySolution ree_two_copy_numeric(const WernerParams& p, double tol) {
  if (p.eta() > 0.0) throw std::invalid_argument("ree_two_copy_numeric: requires eta <= 0");
  std::vector<double> z;
  const double v = minimise_over(ncopy_rate_objective(2, p.eta()), two_copy_polytope(p.d()),
                                 201, tol, &z);
  return {kNaN, z.at(0), z.at(1), clamp0(v)};
}

double ree_two_copy(const WernerParams& p) {
  const double eta = p.eta();
  if (eta >= 0.0) return 0.0;
  if (p.d() < 3 || eta >= -2.0 / p.d()) return ree_one_copy(p);
  return clamp0(ree_two_copy_closed(p).value);
}

Polytope ncopy_ppt_polytope(std::size_t n, int d) {
  require_copies(n);
  // Cone rows as linear functions of x: column k holds M^{(x)n} expand(e_k).
  std::vector<std::vector<double>> cols(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<double> e(n + 1, 0.0);
    e[k] = 1.0;
    cols[k] = expand(e);
    apply_cone_matrix(cols[k], n, d);
  }
  const std::size_t cone = std::size_t{1} << n;

  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  auto add = [&](std::vector<double> row, double b) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      bool same = std::abs(rhs[i] - b) <= 1e-14;
      for (std::size_t j = 0; same && j < n; ++j) same = std::abs(rows[i][j] - row[j]) <= 1e-14;
      if (same) return;
    }
    rows.push_back(std::move(row));
    rhs.push_back(b);
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = -1.0;
    add(row, 0.0);  // x_i >= 0
  }
  add(std::vector<double>(n, 1.0), 1.0);  // x_n >= 0
  for (std::size_t r = 0; r < cone; ++r) {
    // sum_k c_k[r] x_k >= 0 with x_n = 1 - sum z
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = -(cols[k][r] - cols[n][r]);
    add(std::move(row), cols[n][r]);
  }

  Polytope poly;
  poly.a.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  poly.b.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      poly.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    poly.b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  return poly;
}

double rppt_ncopy_numeric(std::size_t n, const WernerParams& p, double tol) {
  require_copies(n);
  const std::size_t grid = n == 3 ? 41 : 201;
  return clamp0(minimise_over(ncopy_rate_objective(n, p.eta()),
                              ncopy_ppt_polytope(n, p.d()), grid, tol, nullptr));
}

double squashed_purification_bound(const WernerParams& p) {
  const double eta = p.eta();
  const double d = p.d();
  if (eta > 0.0) return 0.0;
  auto term = [](double w, double denom) {
    return w > 0.0 ? w / 4.0 * std::log2(w / denom) : 0.0;
  };
  return clamp0(std::log2(d) + term(1.0 + eta, d * (d + 1.0)) + term(1.0 - eta, d * (d - 1.0)));
}

double squashed_convexity_bound(const WernerParams& p) {
  const double eta = p.eta();
  const double d = p.d();
  if (eta >= 0.0) return 0.0;
  if (p.d() % 2 == 0) return -eta * std::log2((d + 2.0) / d);
  return -eta / 2.0 * std::log2((d + 3.0) / (d - 1.0));
}

}  // namespace hwb
